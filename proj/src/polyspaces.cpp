#include "mes/polyspaces.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mes {

HomPoly::HomPoly(int d, int w) : d_(d), w_(w) {
  if (d < 1 || w < 0) throw std::invalid_argument("HomPoly: need d >= 1 and w >= 0");
}

HomPoly::HomPoly(int d, int w, const std::map<Exponents, Rational>& coeffs) : HomPoly(d, w) {
  for (const auto& [e, c] : coeffs) add(e, c);
}

HomPoly HomPoly::monomial(const Exponents& e, const Rational& c) {
  int w = 0;
  for (int x : e) w += x;
  HomPoly p(static_cast<int>(e.size()), w);
  p.add(e, c);
  return p;
}

Rational HomPoly::coeff(const Exponents& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

void HomPoly::add(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != d_) throw std::invalid_argument("HomPoly: exponent length mismatch");
  int s = 0;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("HomPoly: negative exponent");
    s += x;
  }
  if (s != w_) throw std::invalid_argument("HomPoly: term is not of the declared degree");
  if (c == 0) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

void HomPoly::check(const HomPoly& o) const {
  if (o.d_ != d_ || o.w_ != w_) throw std::invalid_argument("HomPoly: shape mismatch");
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  check(o);
  for (const auto& [e, c] : o.c_) add(e, c);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) {
  check(o);
  for (const auto& [e, c] : o.c_) add(e, -c);
  return *this;
}

HomPoly operator*(const Rational& c, const HomPoly& p) {
  HomPoly r(p.d_, p.w_);
  for (const auto& [e, x] : p.c_) r.add(e, c * x);
  return r;
}

namespace {

void gen_monomials(int d, int w, Exponents& cur, std::vector<Exponents>& out) {
  const int i = static_cast<int>(cur.size());
  if (i == d - 1) {
    cur.push_back(w);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = w; e >= 0; --e) {
    cur.push_back(e);
    gen_monomials(d, w - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Exponents> monomials(int d, int w) {
  if (d < 1 || w < 0) throw std::invalid_argument("monomials: need d >= 1 and w >= 0");
  std::vector<Exponents> out;
  Exponents cur;
  gen_monomials(d, w, cur, out);
  return out;
}

std::vector<Rational> to_vector(const HomPoly& p) {
  const auto ms = monomials(p.d(), p.w());
  std::vector<Rational> v(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) v[i] = p.coeff(ms[i]);
  return v;
}

HomPoly from_vector(int d, int w, const std::vector<Rational>& v) {
  const auto ms = monomials(d, w);
  if (ms.size() != v.size()) throw std::invalid_argument("from_vector: length mismatch");
  HomPoly p(d, w);
  for (size_t i = 0; i < ms.size(); ++i) p.add(ms[i], v[i]);
  return p;
}

namespace {

using IntPoly = std::map<Exponents, Integer>;

// (sum_t row[t] x_t)^e
IntPoly linear_power(const std::vector<int>& row, int e) {
  const size_t d = row.size();
  IntPoly r;
  r.emplace(Exponents(d, 0), Integer(1));
  for (int k = 0; k < e; ++k) {
    IntPoly n;
    for (const auto& [ex, c] : r)
      for (size_t t = 0; t < d; ++t) {
        if (row[t] == 0) continue;
        Exponents f = ex;
        ++f[t];
        n[f] += c * row[t];
      }
    for (auto it = n.begin(); it != n.end();) it = it->second == 0 ? n.erase(it) : std::next(it);
    r = std::move(n);
  }
  return r;
}

}  // namespace

HomPoly substitute(const HomPoly& f, const LinearMap& M) {
  const size_t d = static_cast<size_t>(f.d());
  if (M.size() != d) throw std::invalid_argument("substitute: map has wrong number of rows");
  for (const auto& row : M)
    if (row.size() != d) throw std::invalid_argument("substitute: map has wrong number of columns");
  std::map<std::pair<size_t, int>, IntPoly> powers;
  auto power = [&](size_t i, int e) -> const IntPoly& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, linear_power(M[i], e)).first;
    return it->second;
  };
  HomPoly r(f.d(), f.w());
  for (const auto& [ex, c] : f.terms()) {
    IntPoly acc;
    acc.emplace(Exponents(d, 0), Integer(1));
    for (size_t i = 0; i < d; ++i) {
      if (ex[i] == 0) continue;
      const IntPoly& p = power(i, ex[i]);
      IntPoly n;
      for (const auto& [a, x] : acc)
        for (const auto& [b, y] : p) {
          Exponents s(d);
          for (size_t t = 0; t < d; ++t) s[t] = a[t] + b[t];
          n[s] += x * y;
        }
      acc = std::move(n);
    }
    for (const auto& [e, x] : acc)
      if (x != 0) r.add(e, c * Rational(x));
  }
  return r;
}

namespace {

LinearMap identity_map(int d) {
  LinearMap m(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return m;
}

LinearMap compose(const LinearMap& A, const LinearMap& B) {
  const size_t d = A.size();
  LinearMap C(d, std::vector<int>(d, 0));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      if (A[i][k])
        for (size_t j = 0; j < d; ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

LinearMap sharp_map(int d) {
  LinearMap m(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t t = 0; t <= i; ++t) m[i][t] = 1;
  return m;
}

// j = 0 gives the plain flat map.
LinearMap flat_map(int d, int j) {
  LinearMap m = identity_map(d);
  for (int i = 1; i < d; ++i)
    if (i != j) m[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = -1;
  return m;
}

void check_j(int d, int j, int lo) {
  if (j < lo || j > d - 1) throw std::out_of_range("operator index j out of range");
}

}  // namespace

HomPoly reindex(const HomPoly& f, Reindex mode, int j) {
  switch (mode) {
    case Reindex::Sharp:
      return substitute(f, sharp_map(f.d()));
    case Reindex::Flat:
      return substitute(f, flat_map(f.d(), 0));
    case Reindex::FlatJ:
      check_j(f.d(), j, 1);
      return substitute(f, flat_map(f.d(), j));
  }
  throw std::invalid_argument("reindex: unknown mode");
}

namespace {

// Substitution maps x -> (x_{s^{-1}(1)}, .., x_{s^{-1}(d)}) over the (j, d-j)-shuffles s.
std::vector<LinearMap> shuffle_maps(int d, int j) {
  std::vector<LinearMap> out;
  std::vector<int> choose(static_cast<size_t>(d), 0);
  std::fill(choose.begin(), choose.begin() + j, 1);
  std::sort(choose.begin(), choose.end());
  do {
    // positions (1-based values of s on 1..j) are where choose == 1, in increasing order
    std::vector<int> sinv(static_cast<size_t>(d));
    int a = 0, b = j;
    for (int p = 0; p < d; ++p) sinv[static_cast<size_t>(p)] = choose[static_cast<size_t>(p)] ? a++ : b++;
    LinearMap m(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(sinv[static_cast<size_t>(i)])] = 1;
    out.push_back(m);
  } while (std::next_permutation(choose.begin(), choose.end()));
  return out;
}

std::vector<LinearMap> sh_prime_maps(int d, int j) {
  // Displayed expansions: the sharp substitution is applied to the arguments of f first,
  // then the shuffled variables, then flat_j.
  std::vector<LinearMap> out;
  const LinearMap S = sharp_map(d), B = flat_map(d, j);
  for (const auto& P : shuffle_maps(d, j)) out.push_back(compose(compose(S, P), B));
  return out;
}

LinearMap p_map(int d, int j) {
  LinearMap m(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i) {
    if (i < j)
      m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    else
      m[static_cast<size_t>(i)][static_cast<size_t>(d - 1 - (i - j))] = -1;
  }
  return m;
}

}  // namespace

HomPoly sh_op(const HomPoly& f, int j, bool primed) {
  check_j(f.d(), j, 1);
  HomPoly r(f.d(), f.w());
  for (const auto& M : primed ? sh_prime_maps(f.d(), j) : shuffle_maps(f.d(), j)) r += substitute(f, M);
  return r;
}

HomPoly p_op(const HomPoly& f, int j) {
  check_j(f.d(), j, 0);
  const HomPoly r = substitute(f, p_map(f.d(), j));
  return (f.d() - j) % 2 ? Rational(-1) * r : r;
}

namespace {

using PolyMap = std::function<HomPoly(const HomPoly&)>;

// Basis of the common kernel of the given linear maps on V^(d)_w.
std::vector<HomPoly> kernel_of(int d, int w, const std::vector<PolyMap>& maps) {
  const auto ms = monomials(d, w);
  const size_t n = ms.size();
  RatMatrix A(n * maps.size(), n);
  for (size_t c = 0; c < n; ++c) {
    const HomPoly m = HomPoly::monomial(ms[c]);
    for (size_t k = 0; k < maps.size(); ++k) {
      const auto img = to_vector(maps[k](m));
      for (size_t r = 0; r < n; ++r) A(k * n + r, c) = img[r];
    }
  }
  std::vector<HomPoly> out;
  for (const auto& v : kernel(A)) out.push_back(from_vector(d, w, v));
  return out;
}

}  // namespace

std::vector<HomPoly> lsh_basis(int d, int w) {
  if (d < 1 || w < 0) throw std::invalid_argument("lsh_basis: need d >= 1 and w >= 0");
  std::vector<PolyMap> maps;
  for (int j = 1; j < d; ++j) {
    const auto sh = sh_prime_maps(d, j);
    const LinearMap pm = p_map(d, j);
    const bool neg = (d - j) % 2;
    maps.push_back([sh, pm, neg](const HomPoly& f) {
      HomPoly r(f.d(), f.w());
      for (const auto& M : sh) r += substitute(f, M);
      const HomPoly p = substitute(f, pm);
      return neg ? r + p : r - p;
    });
  }
  maps.push_back([](const HomPoly& f) { return f - p_op(f, 0); });
  return kernel_of(d, w, maps);
}

size_t lsh_dim(int d, int w) { return lsh_basis(d, w).size(); }

HomPoly gl2_act(const HomPoly& P, const Mat2Z& A) {
  if (P.d() != 2) throw std::invalid_argument("gl2_act: polynomial must have two variables");
  return substitute(P, {{static_cast<int>(A.a), static_cast<int>(A.b)}, {static_cast<int>(A.c), static_cast<int>(A.d)}});
}

GroupRingElem gr_mul(const GroupRingElem& x, const GroupRingElem& y) {
  GroupRingElem r;
  for (const auto& [a, g] : x)
    for (const auto& [b, h] : y) r.emplace_back(a * b, g * h);
  return r;
}

HomPoly gl2_act(const HomPoly& P, const GroupRingElem& x) {
  HomPoly r(P.d(), P.w());
  for (const auto& [c, g] : x) r += c * gl2_act(P, g);
  return r;
}

namespace {

GroupRingElem one_plus(const Mat2Z& g, int sign = 1) { return {{1, Mat2Z::identity()}, {sign, g}}; }
GroupRingElem elem(const Mat2Z& g) { return {{1, g}}; }

PolyMap action(GroupRingElem x) {
  return [x](const HomPoly& P) { return gl2_act(P, x); };
}

}  // namespace

std::vector<HomPoly> special_space_basis(SpaceKind kind, int w) {
  if (w < 0) throw std::invalid_argument("special_space_basis: negative degree");
  const Mat2Z gp = Mat2Z::gamma_p();
  switch (kind) {
    case SpaceKind::W:
      return kernel_of(2, w, {action(one_plus(Mat2Z::epsilon_p(), -1)),
                              action({{1, Mat2Z::identity()}, {1, gp}, {1, gp * gp}})});
    case SpaceKind::FShPol:
      // Q(X,Y)+Q(Y,X) = 0 and Q(X,Y)+Q(X+Y,-Y)+Q(-X-Y,X) = 0
      return kernel_of(2, w, {action(one_plus(Mat2Z::epsilon())),
                              action({{1, Mat2Z::identity()}, {1, Mat2Z{1, 1, 0, -1}}, {1, Mat2Z{-1, -1, 1, 0}}})});
    case SpaceKind::OddPeriod:
      // P(X,Y)-P(X+Y,Y)-P(X+Y,X) = 0
      return kernel_of(2, w, {action({{1, Mat2Z::identity()}, {-1, Mat2Z{1, 1, 0, 1}}, {-1, Mat2Z{1, 1, 1, 0}}})});
  }
  throw std::invalid_argument("special_space_basis: unknown kind");
}

bool in_lsh2(const HomPoly& P) {
  if (P.d() != 2) return false;
  // P(X,X+Y)+P(Y,X+Y) = -P(X,-Y) and P(X,Y) = P(-Y,-X)
  const HomPoly lhs = substitute(P, {{1, 0}, {1, 1}}) + substitute(P, {{0, 1}, {1, 1}});
  const HomPoly rhs = Rational(-1) * substitute(P, {{1, 0}, {0, -1}});
  return lhs == rhs && P == substitute(P, {{0, -1}, {-1, 0}});
}

bool in_space(SpaceKind kind, const HomPoly& P) {
  if (P.d() != 2) return false;
  const Mat2Z gp = Mat2Z::gamma_p();
  std::vector<GroupRingElem> eqs;
  switch (kind) {
    case SpaceKind::W:
      eqs = {one_plus(Mat2Z::epsilon_p(), -1), {{1, Mat2Z::identity()}, {1, gp}, {1, gp * gp}}};
      break;
    case SpaceKind::FShPol:
      eqs = {one_plus(Mat2Z::epsilon()), {{1, Mat2Z::identity()}, {1, Mat2Z{1, 1, 0, -1}}, {1, Mat2Z{-1, -1, 1, 0}}}};
      break;
    case SpaceKind::OddPeriod:
      eqs = {{{1, Mat2Z::identity()}, {-1, Mat2Z{1, 1, 0, 1}}, {-1, Mat2Z{1, 1, 1, 0}}}};
      break;
  }
  for (const auto& x : eqs)
    if (!gl2_act(P, x).is_zero()) return false;
  return true;
}

HomPoly fsh_lsh_iso(const HomPoly& P, IsoDirection dir) {
  if (P.d() != 2 || P.w() % 2 == 0) throw std::invalid_argument("fsh_lsh_iso: needs d = 2 and odd degree");
  if (dir == IsoDirection::FshToLsh) {
    if (!in_space(SpaceKind::FShPol, P)) throw std::invalid_argument("fsh_lsh_iso: input not in FSh^pol");
    const auto x = gr_mul(gr_mul(elem(Mat2Z::gamma_p()), one_plus(Mat2Z::epsilon_p(), -1)), elem(Mat2Z::delta()));
    return gl2_act(P, x);
  }
  if (!in_lsh2(P)) throw std::invalid_argument("fsh_lsh_iso: input not in LSh^(2)");
  const auto x = gr_mul(gr_mul(elem(Mat2Z::gamma()), one_plus(Mat2Z::epsilon())), elem(Mat2Z::delta()));
  return Rational(-1, 3) * gl2_act(P, x);
}

Rational pairing(const HomPoly& P, const HomPoly& Q) {
  if (P.d() != 2 || Q.d() != 2) throw std::invalid_argument("pairing: needs d = 2");
  if (P.w() != Q.w()) throw std::invalid_argument("pairing: degree mismatch");
  const int w = P.w();
  const HomPoly Pd = gl2_act(P, Mat2Z::delta());
  Rational s = 0;
  for (const auto& [e, c] : Pd.terms()) {
    const int a = e[0];
    const int b = w - a;  // the only partner with a = w - b
    const Rational q = Q.coeff({b, w - b});
    if (q == 0) continue;
    const Rational sign = (a + 1) % 2 ? -1 : 1;
    s += sign * c * q / binomial(w, b);
  }
  return s;
}

std::vector<Rational> express_in_basis(const std::vector<HomPoly>& basis, const HomPoly& target, bool* ok) {
  const auto tv = to_vector(target);
  RatMatrix A(tv.size(), basis.size() + 1);
  for (size_t c = 0; c < basis.size(); ++c) {
    if (basis[c].d() != target.d() || basis[c].w() != target.w())
      throw std::invalid_argument("express_in_basis: shape mismatch");
    const auto v = to_vector(basis[c]);
    for (size_t r = 0; r < v.size(); ++r) A(r, c) = v[r];
  }
  for (size_t r = 0; r < tv.size(); ++r) A(r, basis.size()) = tv[r];
  std::vector<size_t> piv;
  const RatMatrix R = rref(A, &piv);
  if (ok) *ok = piv.empty() || piv.back() != basis.size();
  if (!piv.empty() && piv.back() == basis.size()) return {};
  std::vector<Rational> x(basis.size(), Rational(0));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = R(i, basis.size());
  return x;
}

bool same_span(const std::vector<HomPoly>& a, const std::vector<HomPoly>& b) {
  auto rk = [](const std::vector<HomPoly>& v) {
    if (v.empty()) return size_t{0};
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : v) rows.push_back(to_vector(p));
    return rank(RatMatrix::from_rows(rows));
  };
  std::vector<HomPoly> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const size_t r = rk(ab);
  return rk(a) == r && rk(b) == r;
}

HomPoly parse_xy(const std::string& src) {
  std::string s;
  for (char ch : src)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_xy: empty input");
  std::vector<std::pair<Exponents, Rational>> terms;
  size_t i = 0;
  int degree = -1;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num += s[i++];
    if (i < s.size() && s[i] == '*') ++i;
    Rational c = num.empty() ? Rational(1) : Rational(num);
    c.canonicalize();
    Exponents e{0, 0};
    while (i < s.size() && (s[i] == 'X' || s[i] == 'Y')) {
      const size_t var = s[i] == 'X' ? 0 : 1;
      ++i;
      int p = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ps;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ps += s[i++];
        if (ps.empty()) throw std::invalid_argument("parse_xy: missing exponent");
        p = std::stoi(ps);
      }
      e[var] += p;
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("parse_xy: unexpected character");
    const int deg = e[0] + e[1];
    if (degree >= 0 && deg != degree) throw std::invalid_argument("parse_xy: polynomial is not homogeneous");
    degree = deg;
    terms.emplace_back(e, sign * c);
  }
  HomPoly p(2, degree);
  for (const auto& [e, c] : terms) p.add(e, c);
  return p;
}

std::string to_string(const HomPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  const auto ms = monomials(p.d(), p.w());
  bool first = true;
  for (const auto& m : ms) {
    const Rational c = p.coeff(m);
    if (c == 0) continue;
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    const Rational a = abs(c);
    bool all_zero = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    if (a != 1 || all_zero) os << a.get_str();
    for (size_t t = 0; t < m.size(); ++t) {
      if (m[t] == 0) continue;
      if (p.d() == 2)
        os << (t == 0 ? "X" : "Y");
      else
        os << "x" << t + 1;
      if (m[t] > 1) os << "^" << m[t];
    }
    first = false;
  }
  return os.str();
}

}  // namespace mes
