#include "ncmf/corpus.hpp"

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

const char* kHeisenberg = R"(# U(h) for the 5-dimensional Heisenberg Lie algebra; f = [x1, y1] is central
# and A/(f) is the polynomial ring on four variables.
field Q;
gens x1:1 x2:1 y1:1 y2:1;
bound degree 8;
bound steps 5;
rel x2*x1 - x1*x2;
rel y2*y1 - y1*y2;
rel y2*x1 - x1*y2;
rel y1*x2 - x2*y1;
rel x1*y1 - y1*x1 - x2*y2 + y2*x2;
elem f = x1*y1 - y1*x1;
module k = residue over f;
verify normal f;
verify zero f*x1 - x1*f;
verify zero f*y2 - y2*f;
)";

// k[x,y][w; zeta] with zeta(x) = x + y, zeta(y) = q y and f = w^2.
std::string ore(const std::string& field, int q, int degree, int steps) {
  std::string qs = std::to_string(q);
  return "# Ore extension k[x,y][w; zeta], zeta(x) = x + y, zeta(y) = q y, f = w^2.\n"
         "field " + field + ";\n"
         "param q = " + qs + ";\n"
         "gens x:1 y:1 w:1;\n"
         "bound degree " + std::to_string(degree) + ";\n"
         "bound steps " + std::to_string(steps) + ";\n"
         "rel y*x - x*y;\n"
         "rel w*x - x*w - y*w;\n"
         "rel w*y - q*y*w;\n"
         "elem f = w^2;\n"
         "auto zeta { x -> x + y; y -> q*y; w -> w; }\n"
         "matrix phi { w, -(x + y); 0, w };\n"
         "matrix tau { w, x + (1 + q)*y; 0, w };\n"
         "tmf T = (phi, tau) of f;\n"
         "matrix one { 1, 0; 0, 1 };\n"
         "morphism Id = (one, one) : T -> T;\n"
         "matrix phibar over f { w, -(x + y); 0, w };\n"
         "module N = coker phibar;\n"
         "verify normal f;\n"
         "verify auto zeta;\n"
         "verify tmf T;\n"
         "verify morphism Id;\n";
}

const char* kOreNonperiodic = R"(# Ore extension over Q with zeta(x) = (x + y)/2, zeta(y) = y/2.
field Q;
gens x:1 y:1 w:1;
bound degree 14;
bound steps 12;
rel y*x - x*y;
rel w*x - 1/2*x*w - 1/2*y*w;
rel w*y - 1/2*y*w;
elem f = w^2;
auto zeta { x -> (x + y)/2; y -> y/2; w -> w; }
matrix phi { w, -(x + y)/2; 0, w };
matrix tau { w, x/4 + y/2; 0, w };
tmf T = (phi, tau) of f;
verify normal f;
verify auto zeta;
verify tmf T;
)";

const char* kSklyanin = R"(# Nondegenerate 3-dimensional Sklyanin algebra with central g.
field Q;
gens x:1 y:1 z:1;
bound degree 10;
bound steps 6;
bound tmax 10;
rel y*z + z*y - x^2;
rel x*z + z*x - y^2;
rel x*y + y*x - z^2;
elem g = 2*(y^3 + x*y*z - y*x*z - x^3);
matrix phi src [3, 4, 4, 4] tgt [2, 2, 2, 3] {
  x, y, z, 0;
  -y*z - 2*x^2, -y*x, z*x - x*z, x;
  x*y - 2*y*x, x*z, -x^2, y;
  -y^2 - z*x, x^2, -x*y, z
};
matrix tau src [5, 5, 5, 6] tgt [3, 4, 4, 4] {
  -z*y, -x, z, y;
  z*x - x*z, z, -y, x;
  x*y, y, x, -z;
  2*x*y*z - 4*x^3, -2*x^2, 2*y^2, 2*(x*y - y*x)
};
tmf T = (phi, tau) of g;
matrix m1 over g src [1, 1, 1] tgt [0] { x; y; z };
matrix m2 over g src [2, 2, 2, 3] tgt [1, 1, 1] {
  -x, z, y;
  z, -y, x;
  y, x, -z;
  -2*x^2, 2*y^2, 2*(x*y - y*x)
};
module k = residue over g;
module M1 = coker m1;
verify normal g;
verify tmf T;
verify zero g*x - x*g;
)";

long long binom2(long long k) { return k < 2 ? 0 : k * (k - 1) / 2; }

std::string qpow(long long e) { return "q^" + std::to_string(e); }

// Invariant ring of k_q[x,y] under a cyclic group: C/(omega) with the
// factorization (N_j, P_{n-j}) of omega.
std::string invariant(int n, int j, const std::string& field, int q) {
  long long nn = static_cast<long long>(n) * n;
  long long m = n - j;
  std::string ns = std::to_string(n);
  std::string out = "# Skew polynomial ring C with omega = XZ - q^(-C(n,2)) Y^n, n = " + ns +
                    ", j = " + std::to_string(j) + ".\n";
  out += "field " + field + ";\n";
  out += "param q = " + std::to_string(q) + ";\n";
  out += "gens X:" + ns + " Y:2 Z:" + ns + ";\n";
  out += "bound degree " + std::to_string(4 * n) + ";\n";
  out += "bound steps 4;\n";
  out += "rel Y*X - " + qpow(n) + "*X*Y;\n";
  out += "rel Z*X - " + qpow(nn) + "*X*Z;\n";
  out += "rel Z*Y - " + qpow(n) + "*Y*Z;\n";
  out += "elem omega = X*Z - " + qpow(-binom2(n)) + "*Y^" + ns + ";\n";
  auto ypow = [](long long k) { return k == 0 ? std::string("1") : "Y^" + std::to_string(k); };
  out += "matrix N { " + qpow(-binom2(m)) + "*" + ypow(m) + ", -" + qpow(m * j - nn) + "*X; Z, -" +
         qpow(n * j - binom2(j) - nn) + "*" + ypow(j) + " };\n";
  out += "matrix P { -" + qpow(-binom2(j) - j * m) + "*" + ypow(j) + ", X; -" + qpow(-m * j) + "*Z, " +
         qpow(m * m - binom2(m)) + "*" + ypow(m) + " };\n";
  out += "tmf T = (N, P) of omega;\n";
  out += "verify normal omega;\n";
  out += "verify zero omega*X - " + qpow(nn) + "*X*omega;\n";
  out += "verify zero omega*Y - Y*omega;\n";
  out += "verify zero omega*Z - " + qpow(-nn) + "*Z*omega;\n";
  out += "verify tmf T;\n";
  return out;
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"heisenberg-n2", "ore-n3", "ore-n4", "ore-n6", "ore-nonperiodic", "sklyanin",
          "invariant-n2-j1", "invariant-n3-j1", "invariant-n3-j2"};
}

std::string corpus_text(const std::string& name) {
  if (name == "heisenberg-n2") return kHeisenberg;
  if (name == "ore-n3") return ore("F7", 2, 12, 8);
  if (name == "ore-n4") return ore("F5", 2, 12, 8);
  if (name == "ore-n6") return ore("F7", 3, 14, 8);
  if (name == "ore-nonperiodic") return kOreNonperiodic;
  if (name == "sklyanin") return kSklyanin;
  if (name == "invariant-n2-j1") return invariant(2, 1, "F7", 2);
  if (name == "invariant-n3-j1") return invariant(3, 1, "F5", 2);
  if (name == "invariant-n3-j2") return invariant(3, 2, "F5", 2);
  throw Error(ErrorKind::UnknownName, "no bundled example named " + name);
}

}  // namespace ncmf
