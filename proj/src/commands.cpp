#include "ncmf/commands.hpp"

#include <chrono>
#include <cstdio>

#include "ncmf/resolve.hpp"
#include "ncmf/zhang.hpp"

namespace ncmf {

using nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::UnknownName:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::InhomogeneousEntry:
    case ErrorKind::InhomogeneousRelation:
    case ErrorKind::ContextMismatch:
    case ErrorKind::ImageDegreeMismatch:
      return 3;
    case ErrorKind::TruncationExceeded:
      return 2;
    default:
      return 1;
  }
}

Report error_report(const std::string& command, const Error& e) {
  Report r;
  r.exit_code = exit_code_for(e.kind());
  r.record["command"] = command;
  r.record["verdict"] = r.exit_code == 2 ? "incomplete" : r.exit_code == 3 ? "input-error" : "fail";
  r.record["error"] = kind_name(e.kind());
  r.record["message"] = e.what();
  r.lines.push_back(std::string("error: ") + e.what());
  return r;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

ordered_json matrix_json(const GradedMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(row);
  }
  return {{"source", m.source().degrees()}, {"target", m.target().degrees()}, {"entries", rows}};
}

ordered_json endo_json(const GradedEndo& e) {
  ordered_json out = ordered_json::object();
  const auto& gens = e.algebra()->ring()->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) out[gens[i].name] = e.image(i).to_string();
  return out;
}

std::string endo_text(const GradedEndo& e) {
  std::string out;
  const auto& gens = e.algebra()->ring()->generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    out += (i ? ", " : "") + gens[i].name + " -> " + e.image(i).to_string();
  return out;
}

void add_matrix_lines(Report& r, const std::string& name, const GradedMatrix& m) {
  r.lines.push_back(name + ": " + join(m.source().degrees()) + " -> " + join(m.target().degrees()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string row = "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) row += (j ? ", " : "") + m.at(i, j).to_string();
    r.lines.push_back(row + "]");
  }
}

std::string name_or_sole(const Session& s, const std::string& given, const std::string& kind) {
  return given.empty() ? s.sole(kind) : given;
}

// Element whose quotient a declared module lives over.
std::string module_element(const Session& s, const std::string& module) {
  for (const auto& m : s.modules) {
    if (m.name != module) continue;
    std::string e = m.kind == ModuleDecl::Kind::Coker ? s.matrix(m.source).over : m.source;
    if (e.empty()) throw Error(ErrorKind::InvalidArgument, "module " + module + " is not over a quotient A/(f)");
    return e;
  }
  throw Error(ErrorKind::UnknownName, "no module named " + module);
}

std::string identity_text(const Factorization& t, const std::string& f) {
  std::string r = std::to_string(t.rank());
  if (t.element()->sigma().is_identity())
    return "tau*phi = phi*tau = " + f + "*I_" + r;
  return "tau*phi = " + f + "*I_" + r + " and phi^tw*tau = " + f + "*I_" + r;
}

ordered_json betti_json(const BettiTable& b) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : b.steps) steps.push_back(s);
  return steps;
}

void add_betti_lines(Report& r, const BettiTable& b) {
  for (std::size_t i = 0; i < b.steps.size(); ++i)
    r.lines.push_back("  step " + std::to_string(i) + ": rank " + std::to_string(b.steps[i].size()) +
                      (b.steps[i].empty() ? "" : ", degrees " + join(b.steps[i])));
}

Report run(const Session& s, const CommandRequest& req) {
  Report r;
  const std::string& cmd = req.command;
  const int D = s.bounds.degree;
  const int tmax = req.tmax.value_or(s.bounds.internal());
  auto pass = [&](bool ok, const char* negative = "fail") {
    r.record["verdict"] = ok ? "pass" : negative;
    if (!ok) r.exit_code = std::string(negative) == "incomplete" ? 2 : 1;
  };

  if (cmd == "check-normal" || cmd == "normalizing-auto") {
    std::string f = name_or_sole(s, req.target, "elem");
    ElementPtr e = s.element(f);
    const auto& cert = e->certificate();
    r.record["element"] = f;
    r.record["f"] = e->f().to_string();
    r.record["sigma"] = endo_json(e->sigma());
    r.record["regular_through"] = cert.regularity_bound;
    r.record["certified_degree"] = cert.degree_bound;
    r.lines.push_back(f + " = " + e->f().to_string() + " is normal and regular through degree " +
                      std::to_string(cert.regularity_bound));
    r.lines.push_back("sigma: " + endo_text(e->sigma()));
    if (cmd == "normalizing-auto") {
      auto ord = endo_order(e->sigma(), 1000);
      r.record["order"] = ord ? ordered_json(*ord) : ordered_json(nullptr);
      r.lines.push_back("order of sigma: " + (ord ? std::to_string(*ord) : std::string("none up to 1000")));
    }
    pass(true);
  } else if (cmd == "verify-tmf") {
    std::string name = name_or_sole(s, req.target, "tmf");
    Factorization t = s.factorization(name);
    const TmfDecl* decl = nullptr;
    for (const auto& d : s.tmfs)
      if (d.name == name) decl = &d;
    r.record["tmf"] = name;
    r.record["rank"] = t.rank();
    r.record["identity"] = identity_text(t, decl->element);
    r.record["reduced"] = is_reduced(t);
    r.record["certified_degree"] = D;
    r.lines.push_back("verified: " + identity_text(t, decl->element) + " (normal forms, D = " + std::to_string(D) + ")");
    r.lines.push_back(std::string("reduced: ") + (is_reduced(t) ? "yes" : "no"));
    pass(true);
  } else if (cmd == "unroll") {
    std::string name = name_or_sole(s, req.target, "tmf");
    int steps = req.steps.value_or(s.bounds.steps);
    ResolutionSegment seg = unroll(s.factorization(name), steps);
    bool exact = certify_exactness(seg, tmax);
    ordered_json mods = ordered_json::array();
    for (std::size_t i = 0; i < seg.modules.size(); ++i) {
      mods.push_back(seg.modules[i].degrees());
      r.lines.push_back("  P_" + std::to_string(i) + ": " + join(seg.modules[i].degrees()));
    }
    r.record["tmf"] = name;
    r.record["modules"] = mods;
    r.record["exact"] = exact;
    r.record["certified_degree"] = tmax;
    r.lines.insert(r.lines.begin(), "unrolled " + std::to_string(steps) + " steps over B; exact through degree " +
                                        std::to_string(tmax) + ": " + (exact ? "yes" : "no"));
    pass(exact);
  } else if (cmd == "resolve" || cmd == "betti") {
    std::string name = name_or_sole(s, req.target, "module");
    int hmax = req.hmax.value_or(s.bounds.steps);
    MinimalResolution res = minimal_resolution(s.module(name), hmax, tmax);
    r.record["module"] = name;
    r.record["betti"] = betti_json(res.betti);
    r.record["ranks"] = res.betti.ranks();
    r.record["terminated"] = res.terminated;
    r.record["certified_degree"] = tmax;
    r.lines.push_back("minimal resolution of " + name + ", steps 0.." + std::to_string(hmax) +
                      ", internal degrees <= " + std::to_string(tmax) + (res.terminated ? " (terminates)" : ""));
    add_betti_lines(r, res.betti);
    pass(true);
  } else if (cmd == "detect-period") {
    std::string name = name_or_sole(s, req.target, "tmf");
    int pmax = req.pmax.value_or(s.bounds.steps);
    auto per = detect_period(s.factorization(name), pmax);
    r.record["tmf"] = name;
    r.record["pmax"] = pmax;
    r.record["certified_degree"] = D;
    if (per) {
      r.record["period"] = per->steps;
      r.record["shift"] = per->shift;
      r.lines.push_back("period " + std::to_string(per->steps) + ", shift " + std::to_string(per->shift));
    } else {
      r.record["period"] = nullptr;
      r.lines.push_back("no period found up to " + std::to_string(pmax));
    }
    pass(per.has_value(), "incomplete");
  } else if (cmd == "extract-tmf") {
    std::string name = name_or_sole(s, req.target, "module");
    std::string f = module_element(s, name);
    Factorization t = extract_tmf(s.module(name), s.element(f), tmax);
    r.record["module"] = name;
    r.record["phi"] = matrix_json(t.phi());
    r.record["tau"] = matrix_json(t.tau());
    r.record["reduced"] = is_reduced(t);
    r.record["certified_degree"] = tmax;
    r.lines.push_back("factorization of " + f + " with cokernel " + name + ", rank " + std::to_string(t.rank()));
    add_matrix_lines(r, "phi", t.phi());
    add_matrix_lines(r, "tau", t.tau());
    pass(true);
  } else if (cmd == "pipeline") {
    std::string name = name_or_sole(s, req.target, "module");
    std::string f = module_element(s, name);
    if (!req.dim) throw Error(ErrorKind::InvalidArgument, "pipeline needs --dim");
    PipelineResult p = factorization_pipeline(s.module(name), s.element(f), *req.dim, tmax);
    r.record["module"] = name;
    r.record["syzygy"] = p.syzygy_index;
    r.record["stripped_free_rank"] = p.stripped_rank;
    r.record["finite_resolution"] = p.finite_resolution;
    r.record["betti"] = betti_json(p.prefix.betti);
    r.record["rank"] = p.factorization.rank();
    r.record["splice_verified"] = p.splice_verified;
    r.record["certified_degree"] = tmax;
    if (p.finite_resolution) {
      r.lines.push_back("syzygy " + std::to_string(p.syzygy_index) +
                        " is free: no nontrivial reduced factorization; the resolution is finite");
    } else {
      r.record["phi"] = matrix_json(p.factorization.phi());
      r.record["tau"] = matrix_json(p.factorization.tau());
      r.lines.push_back("syzygy " + std::to_string(p.syzygy_index) + " has a reduced factorization of rank " +
                        std::to_string(p.factorization.rank()) + "; splice " +
                        (p.splice_verified ? "verified" : "NOT verified"));
      add_matrix_lines(r, "phi", p.factorization.phi());
      add_matrix_lines(r, "tau", p.factorization.tau());
    }
    add_betti_lines(r, p.prefix.betti);
    pass(p.finite_resolution || p.splice_verified);
  } else if (cmd == "zhang") {
    std::string zname = name_or_sole(s, req.auto_name, "auto");
    std::string f = name_or_sole(s, req.element, "elem");
    TwistPtr sys = make_twist_system(s.element(f), s.automorphism(zname));
    bool central = is_central_in_twist(*sys);
    ZhangPtr z = ZhangAlgebra::materialize(sys, D);
    r.record["auto"] = zname;
    r.record["element"] = f;
    r.record["c"] = s.field.format(sys->c());
    r.record["central_in_twist"] = central;
    ordered_json rels = ordered_json::array();
    for (const auto& rel : z->twisted()->presentation().relations) rels.push_back(rel.to_string());
    r.record["twisted_relations"] = rels;
    r.record["sigma_hat"] = endo_json(sigma_hat(*z));
    r.record["certified_degree"] = D;
    r.lines.push_back("c = " + s.field.format(sys->c()) + "; " + f + (central ? " is" : " is not") +
                      " central in the twist");
    for (const auto& rel : z->twisted()->presentation().relations) r.lines.push_back("  twisted relation: " + rel.to_string());
    bool ok = true;
    if (!req.transport.empty()) {
      Factorization t = s.factorization(req.transport);
      Factorization tz = transport_tmf(*z, t);
      Factorization back = untransport_tmf(*z, tz);
      bool round = back.phi() == t.phi() && back.tau() == t.tau();
      int pmax = req.pmax.value_or(s.bounds.steps);
      auto per = detect_period(tz, pmax);
      ordered_json tr;
      tr["phi"] = matrix_json(tz.phi());
      tr["tau"] = matrix_json(tz.tau());
      tr["reduced"] = is_reduced(tz);
      tr["round_trip"] = round;
      tr["period"] = per ? ordered_json(per->steps) : ordered_json(nullptr);
      tr["shift"] = per ? ordered_json(per->shift) : ordered_json(nullptr);
      r.record["transport"] = tr;
      r.lines.push_back("transported " + req.transport + " verifies over the twist");
      add_matrix_lines(r, "phi", tz.phi());
      add_matrix_lines(r, "tau", tz.tau());
      r.lines.push_back(per ? "period " + std::to_string(per->steps) + ", shift " + std::to_string(per->shift)
                            : "no period found up to " + std::to_string(pmax));
      r.lines.push_back(std::string("inverse transport recovers ") + req.transport + ": " + (round ? "yes" : "no"));
      ok = round;
    }
    pass(ok);
  } else if (cmd == "cone") {
    std::string name = name_or_sole(s, req.target, "morphism");
    Cone c = mapping_cone(s.morphism(name));
    r.record["morphism"] = name;
    r.record["phi"] = matrix_json(c.cone.phi());
    r.record["tau"] = matrix_json(c.cone.tau());
    r.record["certified_degree"] = D;
    r.lines.push_back("mapping cone of " + name + " verifies, rank " + std::to_string(c.cone.rank()));
    add_matrix_lines(r, "phi", c.cone.phi());
    add_matrix_lines(r, "tau", c.cone.tau());
    pass(true);
  } else if (cmd == "homotopy") {
    std::string name = name_or_sole(s, req.target, "morphism");
    auto h = is_null_homotopic(s.morphism(name));
    r.record["morphism"] = name;
    r.record["null_homotopic"] = h.has_value();
    r.record["certified_degree"] = D;
    if (h) {
      r.record["s"] = matrix_json(h->s);
      r.record["t"] = matrix_json(h->t);
      r.lines.push_back(name + " is null-homotopic");
      add_matrix_lines(r, "s", h->s);
      add_matrix_lines(r, "t", h->t);
    } else {
      r.lines.push_back(name + " is not null-homotopic");
    }
    pass(h.has_value());
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown command " + cmd);
  }
  return r;
}

std::string request_text(const CommandRequest& req) {
  std::string out = req.command + " " + req.target;
  auto opt = [&](const char* n, const std::optional<int>& v) {
    if (v) out += std::string(" --") + n + " " + std::to_string(*v);
  };
  opt("hmax", req.hmax);
  opt("tmax", req.tmax);
  opt("pmax", req.pmax);
  opt("steps", req.steps);
  opt("dim", req.dim);
  if (!req.auto_name.empty()) out += " --auto " + req.auto_name;
  if (!req.element.empty()) out += " --f " + req.element;
  if (!req.transport.empty()) out += " --transport " + req.transport;
  return out;
}

}  // namespace

Report run_command(const Session& s, const CommandRequest& req) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    r = run(s, req);
  } catch (const Error& e) {
    r = error_report(req.command, e);
  }
  ordered_json head;
  head["command"] = req.command;
  head["digest"] = fnv1a_hex(serialize_session(s) + "\n" + request_text(req));
  head["bounds"] = {{"degree", s.bounds.degree}, {"steps", s.bounds.steps}, {"tmax", s.bounds.internal()}};
  for (auto it = r.record.begin(); it != r.record.end(); ++it)
    if (it.key() != "command") head[it.key()] = it.value();
  if (req.timings)
    head["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  r.record = std::move(head);
  return r;
}

Report run_verifications(const Session& s) {
  Report r;
  ordered_json checks = ordered_json::array();
  int worst = 0;
  for (const auto& v : s.verifies) {
    std::string label = v.kind + " " + (v.kind == "zero" ? v.expr.to_string() : v.target);
    ordered_json c{{"check", label}};
    try {
      if (v.kind == "tmf") s.factorization(v.target);
      else if (v.kind == "normal") s.element(v.target);
      else if (v.kind == "auto") s.automorphism(v.target);
      else if (v.kind == "morphism") s.morphism(v.target);
      else if (v.kind == "zero" && !s.algebra()->normal_form(v.expr).is_zero())
        throw Error(ErrorKind::VerificationFailed, "normal form is " + s.algebra()->normal_form(v.expr).to_string());
      c["verdict"] = "pass";
      r.lines.push_back("pass  " + label);
    } catch (const Error& e) {
      c["verdict"] = "fail";
      c["message"] = e.what();
      worst = std::max(worst, exit_code_for(e.kind()));
      r.lines.push_back("FAIL  " + label + ": " + e.what());
    }
    checks.push_back(c);
  }
  r.exit_code = worst;
  r.record["command"] = "verify";
  r.record["digest"] = fnv1a_hex(serialize_session(s) + "\nverify");
  r.record["bounds"] = {{"degree", s.bounds.degree}, {"steps", s.bounds.steps}, {"tmax", s.bounds.internal()}};
  r.record["checks"] = checks;
  r.record["verdict"] = worst == 0 ? "pass" : "fail";
  return r;
}

}  // namespace ncmf
