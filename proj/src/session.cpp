#include "ncmf/session.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

std::string where(const Token& t) { return "line " + std::to_string(t.line) + " col " + std::to_string(t.col); }

bool is_kw(const Token& t, const char* kw) { return t.kind == Token::Kind::Ident && t.text == kw; }

std::vector<int> parse_int_list(TokenStream& ts) {
  ts.expect("[");
  std::vector<int> out;
  if (ts.accept("]")) return out;
  do {
    out.push_back(static_cast<int>(ts.expect_int()));
  } while (ts.accept(","));
  ts.expect("]");
  return out;
}

// Solves src_i - tgt_j = deg(e_ij) over nonzero entries, anchoring each connected
// block so its smallest target degree is 0 unless degrees were given.
std::pair<std::vector<int>, std::vector<int>> infer_degrees(const std::vector<NcPoly>& e, std::size_t rows,
                                                            std::size_t cols, std::optional<std::vector<int>> src,
                                                            std::optional<std::vector<int>> tgt,
                                                            const std::string& name) {
  std::vector<std::optional<int>> s(rows), t(cols);
  if (src) for (std::size_t i = 0; i < rows; ++i) s[i] = (*src)[i];
  if (tgt) for (std::size_t j = 0; j < cols; ++j) t[j] = (*tgt)[j];
  auto deg = [&](std::size_t i, std::size_t j) -> std::optional<int> {
    const NcPoly& p = e[i * cols + j];
    if (p.is_zero()) return std::nullopt;
    return p.homogeneous_degree();
  };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!e[i * cols + j].is_zero() && !e[i * cols + j].is_homogeneous())
        throw Error(ErrorKind::InhomogeneousEntry, "matrix " + name + " entry (" + std::to_string(i + 1) + "," +
                                                       std::to_string(j + 1) + ") is not homogeneous");
  // Propagate from anchored nodes first, then anchor fresh components.
  std::function<void()> propagate = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          auto d = deg(i, j);
          if (!d) continue;
          if (s[i] && !t[j]) { t[j] = *s[i] - *d; changed = true; }
          else if (t[j] && !s[i]) { s[i] = *t[j] + *d; changed = true; }
          else if (s[i] && t[j] && *s[i] - *t[j] != *d)
            throw Error(ErrorKind::InhomogeneousEntry,
                        "matrix " + name + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") has degree " + std::to_string(*d) + " but the row and column force " +
                            std::to_string(*s[i] - *t[j]));
        }
    }
  };
  propagate();
  for (std::size_t j = 0; j < cols; ++j) {
    if (t[j]) continue;
    t[j] = 0;
    propagate();
  }
  for (std::size_t i = 0; i < rows; ++i)
    if (!s[i]) {
      if (cols == 0) s[i] = 0;
      else throw Error(ErrorKind::InvalidArgument, "matrix " + name + " row " + std::to_string(i + 1) +
                                                       " is zero; give its degree with src [...]");
    }
  std::vector<int> so, to;
  for (auto& v : s) so.push_back(*v);
  for (auto& v : t) to.push_back(*v);
  if (!src && !tgt && cols > 0) {
    // Shift so the smallest target degree is zero.
    int m = *std::min_element(to.begin(), to.end());
    for (auto& v : so) v -= m;
    for (auto& v : to) v -= m;
  }
  return {so, to};
}

template <typename T>
const T* find_named(const std::vector<T>& v, const std::string& name) {
  for (const auto& x : v)
    if (x.name == name) return &x;
  return nullptr;
}

}  // namespace

const AlgebraPtr& Session::algebra() const {
  if (!alg_) {
    if (!ring) throw Error(ErrorKind::InvalidArgument, "session declares no generators");
    alg_ = make_algebra(AlgebraPresentation{ring, relations}, bounds.degree);
  }
  return alg_;
}

const NcPoly& Session::element_poly(const std::string& name) const {
  for (const auto& [n, p] : elements)
    if (n == name) return p;
  throw Error(ErrorKind::UnknownName, "no element named " + name);
}

ElementPtr Session::element(const std::string& name) const {
  if (auto it = certified_.find(name); it != certified_.end()) return it->second;
  ElementPtr e = NormalElement::certify(algebra(), element_poly(name));
  certified_.emplace(name, e);
  return e;
}

GradedEndo Session::automorphism(const std::string& name) const {
  for (const auto& [n, imgs] : autos)
    if (n == name) return check_endo(algebra(), imgs);
  throw Error(ErrorKind::UnknownName, "no automorphism named " + name);
}

const MatrixDecl& Session::matrix(const std::string& name) const {
  if (const auto* m = find_named(matrices, name)) return *m;
  throw Error(ErrorKind::UnknownName, "no matrix named " + name);
}

AlgebraPtr Session::algebra_over(const std::string& elem) const {
  return elem.empty() ? algebra() : element(elem)->quotient();
}

ModulePresentation Session::module(const std::string& name) const {
  const ModuleDecl* m = find_named(modules, name);
  if (!m) throw Error(ErrorKind::UnknownName, "no module named " + name);
  if (m->kind == ModuleDecl::Kind::Coker) return ModulePresentation{matrix(m->source).matrix};
  AlgebraPtr b = algebra_over(m->source);
  std::vector<int> degs;
  std::vector<NcPoly> entries;
  for (std::size_t i = 0; i < ring->num_generators(); ++i) {
    degs.push_back(ring->generators()[i].degree);
    entries.push_back(NcPoly::generator(ring, i));
  }
  return ModulePresentation{GradedMatrix(FreeModule(b, degs), FreeModule(b, {0}), entries)};
}

namespace {

GradedMatrix reanchor(const GradedMatrix& m, const FreeModule& src, const FreeModule& tgt) {
  if (m.rows() != src.rank() || m.cols() != tgt.rank())
    throw Error(ErrorKind::ShapeMismatch, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                              ", expected " + std::to_string(src.rank()) + "x" +
                                              std::to_string(tgt.rank()));
  std::vector<NcPoly> e;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e.push_back(m.at(i, j));
  return GradedMatrix(src, tgt, std::move(e));
}

}  // namespace

Factorization Session::factorization(const std::string& name) const {
  if (auto it = factorizations_.find(name); it != factorizations_.end()) return it->second;
  const TmfDecl* t = find_named(tmfs, name);
  if (!t) throw Error(ErrorKind::UnknownName, "no factorization named " + name);
  ElementPtr e = element(t->element);
  const GradedMatrix& phi = matrix(t->phi).matrix;
  GradedMatrix tau = reanchor(matrix(t->tau).matrix, phi.target().shifted(e->degree()), phi.source());
  Factorization f = verify_tmf(e, phi, tau);
  factorizations_.emplace(name, f);
  return f;
}

FactorizationMorphism Session::morphism(const std::string& name) const {
  const MorphismDecl* m = find_named(morphisms, name);
  if (!m) throw Error(ErrorKind::UnknownName, "no morphism named " + name);
  Factorization s = factorization(m->source), t = factorization(m->target);
  GradedMatrix g = reanchor(matrix(m->psi_g).matrix, s.G(), t.G());
  GradedMatrix f = reanchor(matrix(m->psi_f).matrix, s.F(), t.F());
  return verify_morphism(s, t, g, f);
}

std::string Session::sole(const std::string& kind) const {
  std::vector<std::string> names;
  if (kind == "tmf") for (const auto& t : tmfs) names.push_back(t.name);
  if (kind == "module") for (const auto& m : modules) names.push_back(m.name);
  if (kind == "morphism") for (const auto& m : morphisms) names.push_back(m.name);
  if (kind == "elem") for (const auto& e : elements) names.push_back(e.first);
  if (kind == "auto") for (const auto& a : autos) names.push_back(a.first);
  if (names.size() != 1)
    throw Error(ErrorKind::InvalidArgument, "session has " + std::to_string(names.size()) + " " + kind +
                                                " declarations; name one explicitly");
  return names[0];
}

Session parse_session(std::string_view text) {
  Session s;
  TokenStream ts(tokenize(text));
  ExprEnv env;
  std::set<std::string> names;
  bool have_field = false;
  auto declare = [&](const std::string& name, const Token& at) {
    if (!names.insert(name).second) throw Error(ErrorKind::Syntax, where(at) + ": duplicate name " + name);
  };
  auto need_ring = [&](const Token& at) {
    if (!s.ring) throw Error(ErrorKind::Syntax, where(at) + ": gens must be declared first");
  };
  auto expr = [&](const Token& at) {
    need_ring(at);
    return ts.parse_expression(s.ring, env);
  };
  while (!ts.at_end()) {
    Token kw = ts.peek();
    std::string word = ts.expect_ident();
    if (word == "field") {
      if (have_field || s.ring) throw Error(ErrorKind::Syntax, where(kw) + ": field must come first, once");
      Token f = ts.peek();
      std::string name = ts.expect_ident();
      if (name == "Q") s.field = Field::rationals();
      else if (name.size() > 1 && name[0] == 'F' && std::all_of(name.begin() + 1, name.end(), ::isdigit))
        s.field = Field::prime(static_cast<std::uint32_t>(std::stoull(name.substr(1))));
      else
        throw Error(ErrorKind::Syntax, where(f) + ": expected Q or F followed by a prime, found '" + name + "'");
      have_field = true;
      ts.expect(";");
    } else if (word == "param") {
      Token at = ts.peek();
      std::string name = ts.expect_ident();
      declare(name, at);
      if (!ts.accept("=")) {
        if (!s.field.is_prime())
          throw Error(ErrorKind::InvalidArgument, where(at) + ": symbolic parameter " + name +
                                                      " is not supported over Q; give it a value");
        throw Error(ErrorKind::InvalidArgument, where(at) + ": parameter " + name + " needs a value over " +
                                                    s.field.name());
      }
      RingPtr scratch = std::make_shared<PolyRing>(s.field, std::vector<Generator>{});
      NcPoly v = ts.parse_expression(scratch, env);
      if (v.max_degree() > 0) throw Error(ErrorKind::Syntax, where(at) + ": parameter value must be a scalar");
      Scalar val = v.constant_term();
      env.params.emplace(name, val);
      s.params.emplace_back(name, val);
      ts.expect(";");
    } else if (word == "gens") {
      if (s.ring) throw Error(ErrorKind::Syntax, where(kw) + ": gens declared twice");
      std::vector<Generator> gens;
      while (!ts.accept(";")) {
        Token at = ts.peek();
        std::string name = ts.expect_ident();
        declare(name, at);
        int d = 1;
        if (ts.accept(":")) d = static_cast<int>(ts.expect_int());
        gens.push_back({name, d});
      }
      s.ring = std::make_shared<PolyRing>(s.field, gens);
    } else if (word == "rel") {
      NcPoly r = expr(kw);
      if (!r.is_zero() && !r.is_homogeneous())
        throw Error(ErrorKind::InhomogeneousRelation, where(kw) + ": relation " + r.to_string() + " is not homogeneous");
      if (s.algebra_built())
        throw Error(ErrorKind::Syntax, where(kw) + ": relations must precede elements, autos and matrices");
      if (!r.is_zero()) s.relations.push_back(r);
      ts.expect(";");
    } else if (word == "bound") {
      Token at = ts.peek();
      std::string what = ts.expect_ident();
      int v = static_cast<int>(ts.expect_int());
      if (what == "degree") {
        if (s.algebra_built()) throw Error(ErrorKind::Syntax, where(at) + ": bound degree must precede elements and matrices");
        s.bounds.degree = v;
      } else if (what == "steps") {
        s.bounds.steps = v;
      } else if (what == "tmax") {
        s.bounds.tmax = v;
      } else {
        throw Error(ErrorKind::Syntax, where(at) + ": expected degree, steps or tmax, found '" + what + "'");
      }
      ts.expect(";");
    } else if (word == "elem") {
      Token at = ts.peek();
      std::string name = ts.expect_ident();
      declare(name, at);
      ts.expect("=");
      NcPoly f = s.algebra()->normal_form(expr(at));
      if (f.is_zero() || !f.is_homogeneous())
        throw Error(ErrorKind::InvalidArgument, where(at) + ": element " + name + " must be nonzero and homogeneous");
      env.elements.emplace(name, f);
      s.elements.emplace_back(name, f);
      s.order.emplace_back("elem", s.elements.size() - 1);
      ts.expect(";");
    } else if (word == "auto") {
      Token at = ts.peek();
      std::string name = ts.expect_ident();
      declare(name, at);
      need_ring(at);
      std::vector<NcPoly> imgs;
      for (std::size_t i = 0; i < s.ring->num_generators(); ++i) imgs.push_back(NcPoly::generator(s.ring, i));
      std::vector<bool> seen(imgs.size(), false);
      ts.expect("{");
      while (!ts.accept("}")) {
        Token g = ts.peek();
        std::string gen = ts.expect_ident();
        auto idx = s.ring->index_of(gen);
        if (!idx) throw Error(ErrorKind::UnknownName, where(g) + ": " + gen + " is not a generator");
        if (seen[*idx]) throw Error(ErrorKind::Syntax, where(g) + ": image of " + gen + " given twice");
        seen[*idx] = true;
        ts.expect("->");
        imgs[*idx] = expr(g);
        ts.expect(";");
      }
      s.algebra();
      s.autos.emplace_back(name, std::move(imgs));
      s.order.emplace_back("auto", s.autos.size() - 1);
      ts.accept(";");
    } else if (word == "matrix") {
      Token at = ts.peek();
      MatrixDecl m;
      m.name = ts.expect_ident();
      declare(m.name, at);
      if (is_kw(ts.peek(), "over")) {
        ts.next();
        Token e = ts.peek();
        m.over = ts.expect_ident();
        if (!env.elements.count(m.over)) throw Error(ErrorKind::UnknownName, where(e) + ": no element named " + m.over);
      }
      std::optional<std::size_t> rows, cols;
      std::optional<std::vector<int>> src, tgt;
      while (!ts.accept("{")) {
        Token opt = ts.peek();
        std::string o = ts.expect_ident();
        if (o == "rows") rows = static_cast<std::size_t>(ts.expect_int());
        else if (o == "cols") cols = static_cast<std::size_t>(ts.expect_int());
        else if (o == "src") src = parse_int_list(ts);
        else if (o == "tgt") tgt = parse_int_list(ts);
        else throw Error(ErrorKind::Syntax, where(opt) + ": expected rows, cols, src, tgt or {, found '" + o + "'");
      }
      std::vector<std::vector<NcPoly>> grid(1);
      if (!ts.accept("}")) {
        while (true) {
          grid.back().push_back(expr(at));
          if (ts.accept(",")) continue;
          if (ts.accept(";")) {
            if (ts.accept("}")) break;
            grid.emplace_back();
            continue;
          }
          ts.expect("}");
          break;
        }
      } else {
        grid.clear();
      }
      std::size_t r = grid.size(), c = grid.empty() ? 0 : grid[0].size();
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i].size() != c)
          throw Error(ErrorKind::ShapeMismatch, where(at) + ": matrix " + m.name + " row " + std::to_string(i + 1) +
                                                    " has " + std::to_string(grid[i].size()) + " entries, expected " +
                                                    std::to_string(c));
      if (grid.empty()) {
        r = rows.value_or(0);
        c = cols.value_or(0);
        grid.assign(r, std::vector<NcPoly>(c, NcPoly(s.ring)));
      }
      if ((rows && *rows != r) || (cols && *cols != c))
        throw Error(ErrorKind::ShapeMismatch, where(at) + ": matrix " + m.name + " has " + std::to_string(r) + "x" +
                                                  std::to_string(c) + " entries");
      if ((src && src->size() != r) || (tgt && tgt->size() != c))
        throw Error(ErrorKind::ShapeMismatch, where(at) + ": degree list length does not match matrix " + m.name);
      AlgebraPtr over = s.algebra_over(m.over);
      std::vector<NcPoly> entries;
      for (auto& row : grid)
        for (auto& e : row) entries.push_back(over->normal_form(e));
      auto [sd, td] = infer_degrees(entries, r, c, src, tgt, m.name);
      m.matrix = GradedMatrix(FreeModule(over, sd), FreeModule(over, td), entries);
      s.matrices.push_back(std::move(m));
      s.order.emplace_back("matrix", s.matrices.size() - 1);
      ts.accept(";");
    } else if (word == "module") {
      Token at = ts.peek();
      ModuleDecl m;
      m.name = ts.expect_ident();
      declare(m.name, at);
      ts.expect("=");
      Token k = ts.peek();
      std::string kind = ts.expect_ident();
      if (kind == "coker") {
        m.kind = ModuleDecl::Kind::Coker;
        Token src = ts.peek();
        m.source = ts.expect_ident();
        if (!find_named(s.matrices, m.source)) throw Error(ErrorKind::UnknownName, where(src) + ": no matrix named " + m.source);
      } else if (kind == "residue") {
        m.kind = ModuleDecl::Kind::Residue;
        if (is_kw(ts.peek(), "over")) {
          ts.next();
          Token e = ts.peek();
          m.source = ts.expect_ident();
          if (!env.elements.count(m.source)) throw Error(ErrorKind::UnknownName, where(e) + ": no element named " + m.source);
        }
      } else {
        throw Error(ErrorKind::Syntax, where(k) + ": expected coker or residue, found '" + kind + "'");
      }
      s.modules.push_back(std::move(m));
      s.order.emplace_back("module", s.modules.size() - 1);
      ts.expect(";");
    } else if (word == "tmf") {
      Token at = ts.peek();
      TmfDecl t;
      t.name = ts.expect_ident();
      declare(t.name, at);
      ts.expect("=");
      ts.expect("(");
      t.phi = ts.expect_ident();
      ts.expect(",");
      t.tau = ts.expect_ident();
      ts.expect(")");
      Token of = ts.peek();
      if (ts.expect_ident() != "of") throw Error(ErrorKind::Syntax, where(of) + ": expected of, found '" + of.text + "'");
      t.element = ts.expect_ident();
      for (const auto& n : {t.phi, t.tau})
        if (!find_named(s.matrices, n)) throw Error(ErrorKind::UnknownName, where(at) + ": no matrix named " + n);
      if (!env.elements.count(t.element)) throw Error(ErrorKind::UnknownName, where(at) + ": no element named " + t.element);
      s.tmfs.push_back(std::move(t));
      s.order.emplace_back("tmf", s.tmfs.size() - 1);
      ts.expect(";");
    } else if (word == "morphism") {
      Token at = ts.peek();
      MorphismDecl m;
      m.name = ts.expect_ident();
      declare(m.name, at);
      ts.expect("=");
      ts.expect("(");
      m.psi_g = ts.expect_ident();
      ts.expect(",");
      m.psi_f = ts.expect_ident();
      ts.expect(")");
      ts.expect(":");
      m.source = ts.expect_ident();
      ts.expect("->");
      m.target = ts.expect_ident();
      for (const auto& n : {m.psi_g, m.psi_f})
        if (!find_named(s.matrices, n)) throw Error(ErrorKind::UnknownName, where(at) + ": no matrix named " + n);
      for (const auto& n : {m.source, m.target})
        if (!find_named(s.tmfs, n)) throw Error(ErrorKind::UnknownName, where(at) + ": no factorization named " + n);
      s.morphisms.push_back(std::move(m));
      s.order.emplace_back("morphism", s.morphisms.size() - 1);
      ts.expect(";");
    } else if (word == "verify") {
      Token at = ts.peek();
      VerifyDecl v;
      v.kind = ts.expect_ident();
      if (v.kind == "zero") {
        v.expr = expr(at);
      } else if (v.kind == "tmf" || v.kind == "normal" || v.kind == "auto" || v.kind == "morphism") {
        Token n = ts.peek();
        v.target = ts.expect_ident();
        if (!names.count(v.target)) throw Error(ErrorKind::UnknownName, where(n) + ": unknown name " + v.target);
      } else {
        throw Error(ErrorKind::Syntax, where(at) + ": expected tmf, normal, auto, morphism or zero, found '" + v.kind + "'");
      }
      s.verifies.push_back(std::move(v));
      s.order.emplace_back("verify", s.verifies.size() - 1);
      ts.expect(";");
    } else {
      throw Error(ErrorKind::Syntax, where(kw) + ": unknown directive '" + word + "'");
    }
  }
  if (!s.ring) throw Error(ErrorKind::Syntax, "session declares no generators");
  return s;
}

namespace {

std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

}  // namespace

std::string serialize_session(const Session& s) {
  std::string out = "field " + s.field.name() + ";\n";
  for (const auto& [n, v] : s.params) out += "param " + n + " = " + s.field.format(v) + ";\n";
  out += "gens";
  for (const auto& g : s.ring->generators()) out += " " + g.name + ":" + std::to_string(g.degree);
  out += ";\n";
  out += "bound degree " + std::to_string(s.bounds.degree) + ";\n";
  out += "bound steps " + std::to_string(s.bounds.steps) + ";\n";
  if (s.bounds.tmax >= 0) out += "bound tmax " + std::to_string(s.bounds.tmax) + ";\n";
  for (const auto& r : s.relations) out += "rel " + r.to_string() + ";\n";
  for (const auto& [kind, idx] : s.order) {
    if (kind == "elem") {
      out += "elem " + s.elements[idx].first + " = " + s.elements[idx].second.to_string() + ";\n";
    } else if (kind == "auto") {
      const auto& [name, imgs] = s.autos[idx];
      out += "auto " + name + " {";
      for (std::size_t i = 0; i < imgs.size(); ++i)
        out += " " + s.ring->generators()[i].name + " -> " + imgs[i].to_string() + ";";
      out += " }\n";
    } else if (kind == "matrix") {
      const MatrixDecl& m = s.matrices[idx];
      out += "matrix " + m.name;
      if (!m.over.empty()) out += " over " + m.over;
      out += " rows " + std::to_string(m.matrix.rows()) + " cols " + std::to_string(m.matrix.cols());
      out += " src " + int_list(m.matrix.source().degrees()) + " tgt " + int_list(m.matrix.target().degrees()) + " {";
      for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
        out += i ? "; " : " ";
        for (std::size_t j = 0; j < m.matrix.cols(); ++j) out += (j ? ", " : "") + m.matrix.at(i, j).to_string();
      }
      out += " };\n";
    } else if (kind == "module") {
      const ModuleDecl& m = s.modules[idx];
      if (m.kind == ModuleDecl::Kind::Coker) out += "module " + m.name + " = coker " + m.source + ";\n";
      else out += "module " + m.name + " = residue" + (m.source.empty() ? "" : " over " + m.source) + ";\n";
    } else if (kind == "tmf") {
      const TmfDecl& t = s.tmfs[idx];
      out += "tmf " + t.name + " = (" + t.phi + ", " + t.tau + ") of " + t.element + ";\n";
    } else if (kind == "morphism") {
      const MorphismDecl& m = s.morphisms[idx];
      out += "morphism " + m.name + " = (" + m.psi_g + ", " + m.psi_f + ") : " + m.source + " -> " + m.target + ";\n";
    } else if (kind == "verify") {
      const VerifyDecl& v = s.verifies[idx];
      out += "verify " + v.kind + " " + (v.kind == "zero" ? v.expr.to_string() : v.target) + ";\n";
    }
  }
  return out;
}

}  // namespace ncmf
