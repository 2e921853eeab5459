#include "qtgi/verification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qtgi/errors.hpp"

namespace qtgi {

namespace {

std::string dims(const QTensor& a) {
  return std::to_string(a.n1()) + "x" + std::to_string(a.n2()) + "x" + std::to_string(a.n3());
}

void require_inverse_shape(const QTensor& a, const QTensor& x) {
  if (x.n1() != a.n2() || x.n2() != a.n1() || x.n3() != a.n3()) {
    throw DimensionMismatch("candidate inverse " + dims(x) + " does not fit " + dims(a));
  }
}

void require_square(const QTensor& a) {
  if (a.n1() != a.n2()) {
    throw DimensionMismatch("tensor " + dims(a) + " is not square in its first two modes");
  }
}

// ||M^H - M|| / max(1, ||M||)
double hermitian_residual(const QTensor& m) { return relative_residual(t_conj_transpose(m), m); }

}  // namespace

double ResidualReport::max_value() const {
  double worst = 0.0;
  for (double v : values) {
    worst = std::max(worst, v);
  }
  return worst;
}

ResidualReport make_report(std::vector<std::string> names, std::vector<double> values, double tol) {
  ResidualReport r{std::move(names), std::move(values), tol, true};
  for (double v : r.values) {
    if (!(v <= tol)) {
      r.pass = false;
    }
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const ResidualReport& r) {
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    os << r.names[i] << ' ' << r.values[i] << '\n';
  }
  os << "tol " << r.tol << '\n' << (r.pass ? "PASS" : "FAIL") << '\n';
  return os;
}

double relative_residual(const QTensor& lhs, const QTensor& rhs) {
  return t_fro_norm(lhs - rhs) / std::max(1.0, t_fro_norm(rhs));
}

PenroseClass::PenroseClass(std::initializer_list<int> equations) {
  for (int e : equations) {
    if (e < 1 || e > 4) {
      throw UnsupportedClass("Penrose equation " + std::to_string(e) + " does not exist");
    }
    bits_.set(static_cast<std::size_t>(e - 1));
  }
  if (bits_.none()) {
    throw UnsupportedClass("empty Penrose class");
  }
}

PenroseClass PenroseClass::parse(std::string_view text) {
  PenroseClass out;
  for (char ch : text) {
    if (ch >= '1' && ch <= '4') {
      out.bits_.set(static_cast<std::size_t>(ch - '1'));
    } else if (ch != ',' && ch != '{' && ch != '}' && ch != ' ') {
      throw UnsupportedClass("cannot parse Penrose class '" + std::string(text) + "'");
    }
  }
  if (out.bits_.none()) {
    throw UnsupportedClass("empty Penrose class");
  }
  return out;
}

std::vector<int> PenroseClass::equations() const {
  std::vector<int> out;
  for (int e = 1; e <= 4; ++e) {
    if (has(e)) {
      out.push_back(e);
    }
  }
  return out;
}

std::string PenroseClass::to_string() const {
  std::string out = "{";
  for (int e : equations()) {
    if (out.size() > 1) {
      out += ',';
    }
    out += std::to_string(e);
  }
  return out + "}";
}

ResidualReport penrose_residuals(const QTensor& a, const QTensor& x, double tol) {
  return class_membership(a, x, PenroseClass{1, 2, 3, 4}, tol);
}

ResidualReport class_membership(const QTensor& a, const QTensor& x, const PenroseClass& cls, double tol) {
  require_inverse_shape(a, x);
  const QTensor ax = tprod_oracle(a, x);
  const QTensor xa = tprod_oracle(x, a);
  std::vector<std::string> names;
  std::vector<double> values;
  if (cls.has(1)) {
    names.emplace_back("AXA=A");
    values.push_back(relative_residual(tprod_oracle(ax, a), a));
  }
  if (cls.has(2)) {
    names.emplace_back("XAX=X");
    values.push_back(relative_residual(tprod_oracle(xa, x), x));
  }
  if (cls.has(3)) {
    names.emplace_back("(AX)^H=AX");
    values.push_back(hermitian_residual(ax));
  }
  if (cls.has(4)) {
    names.emplace_back("(XA)^H=XA");
    values.push_back(hermitian_residual(xa));
  }
  return make_report(std::move(names), std::move(values), tol);
}

ResidualReport drazin_residuals(const QTensor& a, const QTensor& x, std::size_t k, double tol) {
  require_square(a);
  require_inverse_shape(a, x);
  const QTensor ak = t_power(a, k);
  const QTensor ax = tprod_oracle(a, x);
  return make_report({"A^(k+1)X=A^k", "XAX=X", "AX=XA"},
                     {relative_residual(tprod_oracle(tprod_oracle(ak, a), x), ak),
                      relative_residual(tprod_oracle(tprod_oracle(x, a), x), x),
                      relative_residual(tprod_oracle(x, a), ax)},
                     tol);
}

ResidualReport inv_along_residuals(const QTensor& a, const QTensor& b, const QTensor& c, const QTensor& z, Side side,
                                   double tol) {
  require_inverse_shape(a, z);
  const QTensor zaz = tprod_oracle(tprod_oracle(z, a), z);
  if (side == Side::Right) {
    if (b.n1() != a.n2() || c.n2() != a.n1() || b.n3() != a.n3() || c.n3() != a.n3()) {
      throw DimensionMismatch("inverse along: A " + dims(a) + ", B " + dims(b) + ", C " + dims(c));
    }
    return make_report({"ZAB=B", "CAZ=C", "ZAZ=Z"},
                       {relative_residual(tprod_oracle(tprod_oracle(z, a), b), b),
                        relative_residual(tprod_oracle(tprod_oracle(c, a), z), c), relative_residual(zaz, z)},
                       tol);
  }
  const QTensor& d = b;
  const QTensor& e = c;
  if (d.n2() != a.n1() || e.n1() != a.n2() || d.n3() != a.n3() || e.n3() != a.n3()) {
    throw DimensionMismatch("inverse along: A " + dims(a) + ", D " + dims(d) + ", E " + dims(e));
  }
  return make_report({"DAZ=D", "ZAE=E", "ZAZ=Z"},
                     {relative_residual(tprod_oracle(tprod_oracle(d, a), z), d),
                      relative_residual(tprod_oracle(tprod_oracle(z, a), e), e), relative_residual(zaz, z)},
                     tol);
}

double orthogonality_residual(const QTensor& q) {
  require_square(q);
  const QTensor id = t_identity(q.n1(), q.n3());
  const QTensor qh = t_conj_transpose(q);
  const double scale = std::max(1.0, t_fro_norm(id));
  return std::max(t_fro_norm(tprod_oracle(qh, q) - id), t_fro_norm(tprod_oracle(q, qh) - id)) / scale;
}

double f_diagonal_residual(const QTensor& s) {
  double off = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < s.n3(); ++k) {
    for (std::size_t i = 0; i < s.n1(); ++i) {
      for (std::size_t j = 0; j < s.n2(); ++j) {
        const double v = qnorm2(s(i, j, k));
        total += v;
        if (i != j) {
          off += v;
        }
      }
    }
  }
  return total == 0.0 ? 0.0 : std::sqrt(off / total);
}

}  // namespace qtgi
