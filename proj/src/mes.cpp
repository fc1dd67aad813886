#include "mes/mes.hpp"

#include <sstream>
#include <stdexcept>

namespace mes {

SymbolicMES mes_symbolic(const Index& k) {
  if (k.empty()) throw std::invalid_argument("mes_symbolic: empty index");
  SymbolicMES out;
  for (const auto& [uv, c] : delta_g1(k)) out.push_back({c, uv.first, word_index(uv.second)});
  return out;
}

std::string to_string(const SymbolicMES& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : s) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.get_str() << ")";
    if (!t.zeta_word.empty()) os << "*Z(" << index_string(word_index(t.zeta_word)) << ")";
    if (!t.g_index.empty()) os << "*g(" << index_string(t.g_index) << ")";
  }
  return first ? "0" : os.str();
}

Rational depth2_coefficient(int r, int s, int p) {
  Rational c = (r == p) ? 1 : 0;
  c += (r % 2 ? -1 : 1) * binomial(p - 1, r - 1);
  c += ((p - s) % 2 ? -1 : 1) * binomial(p - 1, s - 1);
  return c;
}

namespace {

// acc += a * x, where x has real coefficients.
void axpy_real(CSeries& acc, const Complex& a, const CSeries& x) {
  for (int n = 0; n <= acc.trunc(); ++n) {
    const Real& v = x[n].re;
    if (v == 0) continue;
    acc[n].re += a.re * v;
    acc[n].im += a.im * v;
  }
}

Index reversed_index(Index k) {
  std::reverse(k.begin(), k.end());
  return k;
}

}  // namespace

MesEngine::MesEngine(MzvContext& ctx, int N) : ctx_(ctx), N_(N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
}

Complex MesEngine::zeta_tilde(const Word& w) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto it = zeta_cache_.find(w);
  if (it != zeta_cache_.end()) return it->second;
  const Complex z = Complex(mzv_shuffle_reg(word_elem(w), ctx_)) * two_pi_i_pow(-static_cast<long>(w.size()));
  zeta_cache_.emplace(w, z);
  return z;
}

const CSeries& MesEngine::gsh(const Index& l) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto it = gsh_cache_.find(l);
  if (it != gsh_cache_.end()) return it->second;
  CSeries s = l.empty() ? constant(Complex(1)) : to_complex(gtilde_shuffle(l, N_));
  return gsh_cache_.emplace(l, std::move(s)).first->second;
}

const CSeries& MesEngine::G(const Index& k) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto it = G_cache_.find(k);
  if (it != G_cache_.end()) return it->second;
  CSeries acc = zero();
  if (k.empty()) {
    acc[0] = Complex(1);
  } else {
    // G~ = sum c Z^sh(u)/(2 pi i)^{|u|} (-1)^{wt l} g~^sh_l
    for (const auto& t : mes_symbolic(k)) {
      Complex a = zeta_tilde(t.zeta_word) * t.coeff;
      if (weight(t.g_index) % 2) a = -a;
      axpy_real(acc, a, gsh(t.g_index));
    }
  }
  return G_cache_.emplace(k, std::move(acc)).first->second;
}

CSeries MesEngine::G(const HElem& h) {
  if (!in_h1(h)) throw std::invalid_argument("G: element not in H^1");
  CSeries acc = zero();
  for (const auto& [w, c] : h) acc += G(word_index(w)) * Complex(c);
  return acc;
}

CSeries MesEngine::G_raw(const Index& k) { return G(k) * two_pi_i_pow(weight(k)); }

const CSeries& MesEngine::S(const Index& k) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto it = S_cache_.find(k);
  if (it != S_cache_.end()) return it->second;
  if (k.empty()) throw std::invalid_argument("S: empty index");
  CSeries acc = zero();
  for (size_t j = 0; j <= k.size(); ++j) {
    const Index a(k.begin(), k.begin() + static_cast<long>(j));
    const Index b(k.begin() + static_cast<long>(j), k.end());
    const CSeries prod = G(a) * G(reversed_index(b));
    if (weight(b) % 2)
      acc -= prod;
    else
      acc += prod;
  }
  return S_cache_.emplace(k, std::move(acc)).first->second;
}

CSeries MesEngine::S(const HElem& h) {
  CSeries acc = zero();
  for (const auto& [w, c] : h) acc += S(word_index(w)) * Complex(c);
  return acc;
}

CSeries MesEngine::S_raw(const Index& k) { return S(k) * two_pi_i_pow(weight(k)); }

CSeries MesEngine::S_via_gamma(const Index& k) {
  const Word w = index_word(k) + '1';
  CSeries acc = zero();
  for (size_t p = 0; p < w.size(); ++p) {
    if (w[p] != '1') continue;
    const CSeries left = G(reg0(w.substr(0, p)));
    if (left.is_zero()) continue;
    acc += left * G(reg0(eps_map(word_elem(w.substr(p + 1)))));
  }
  return acc;
}

CSeries MesEngine::eisenstein(int k) { return to_complex(eisenstein_tilde(k, N_)); }

NCSeries<CSeries> MesEngine::phi_series(int trunc) {
  return series_from_h1_map(trunc, zero(), [this](const Word& u) { return constant(zeta_tilde(u)); });
}

NCSeries<CSeries> MesEngine::gamma_md(int trunc) {
  return series_from_h1_map(trunc, zero(), [this](const Word& u) {
    CSeries s = gsh(word_index(u));
    return u.size() % 2 ? CSeries(-s) : s;
  });
}

NCSeries<CSeries> MesEngine::gamma_me(int trunc) {
  return series_from_h1_map(trunc, zero(), [this](const Word& u) { return G(word_index(u)); });
}

CSeries LinearExpr::eval(int N) const {
  CSeries acc(N);
  for (const auto& [c, s] : terms) acc += s * Complex(c);
  return acc;
}

Real verify_identity(const LinearExpr& lhs, const LinearExpr& rhs, int N) {
  return max_deviation(lhs.eval(N), rhs.eval(N));
}

Real check_g4_double_shuffle(MesEngine& e) {
  LinearExpr l;
  l.add(1, e.G(Index{4})).add(-4, e.G(Index{1, 3}));
  return verify_identity(l, LinearExpr{}, e.N());
}

Real check_g5_double_shuffle(MesEngine& e) {
  LinearExpr l;
  l.add(1, e.G(Index{5})).add(-6, e.G(Index{1, 4})).add(-2, e.G(Index{2, 3}));
  return verify_identity(l, LinearExpr{}, e.N());
}

Real check_kaneko_sum(MesEngine& e, int k) {
  if (k < 3) throw std::invalid_argument("Kaneko sum formula needs k >= 3");
  LinearExpr l, r;
  for (int j = 1; j <= k - 2; ++j) l.add(1, e.G(Index{j, k - j}));
  r.add(1, e.G(Index{k})).add(-Rational(1, 2 * (k - 2)), e.G(Index{k - 2}).derivative());
  return verify_identity(l, r, e.N());
}

Real check_kaneko_even_sum(MesEngine& e, int k) {
  if (k < 4 || k % 2) throw std::invalid_argument("even sum formula needs even k >= 4");
  LinearExpr l, r;
  for (int j = 2; j <= k - 2; j += 2) l.add(1, e.G(Index{j, k - j}));
  r.add(Rational(3, 4), e.G(Index{k})).add(-Rational(1, 2 * (k - 2)), e.G(Index{k - 2}).derivative());
  return verify_identity(l, r, e.N());
}

Real check_depth2_closed_form(MesEngine& e, int r, int s) {
  const int k = r + s;
  if (r < 1 || s < 1) throw std::invalid_argument("depth-two closed form needs r, s >= 1");
  LinearExpr l, rhs;
  if (k % 2 == 0) {
    if (k < 4) throw std::invalid_argument("even closed form needs k >= 4");
    l.add(1, e.S(Index{r, s}));
    if (r == 1 || s == 1) {
      rhs.add(Rational(1, 2 * (k - 2)), e.G(Index{k - 2}).derivative()).add(-1, e.G(Index{k}));
    } else if (r % 2 == 0) {
      rhs.add(2, e.G(Index{r}) * e.G(Index{s})).add(-1, e.G(Index{k}));
    } else {
      rhs.add(-1, e.G(Index{k}));
    }
  } else {
    // Stated for r > s; the reversal relation gives S_{r,s} = -S_{s,r} otherwise.
    const int a = std::max(r, s), b = std::min(r, s);
    l.add(r > s ? 1 : -1, e.S(Index{r, s}));
    if (b % 2 == 0) {
      rhs.add(2, e.G(Index{a, b})).add(1, e.G(Index{k}));
    } else {
      rhs.add(-2, e.G(Index{b, a})).add(-1, e.G(Index{k}));
      if (b == 1) rhs.add(Rational(1, 2 * (k - 2)), e.G(Index{k - 2}).derivative());
    }
  }
  return verify_identity(l, rhs, e.N());
}

Real check_smes_22(MesEngine& e) {
  LinearExpr l, r;
  l.add(1, e.S(Index{2, 2}));
  r.add(4, e.eisenstein(4)).add(-1, e.eisenstein(2).derivative());
  return verify_identity(l, r, e.N());
}

Real check_linear_shuffle(MesEngine& e, const Index& k, size_t j) {
  if (j >= k.size()) throw std::invalid_argument("split out of range");
  const Index a(k.begin(), k.begin() + static_cast<long>(j));
  const Index b(k.begin() + static_cast<long>(j), k.end());
  Index target = a;
  for (auto it = b.rbegin(); it != b.rend(); ++it) target.push_back(*it);
  LinearExpr l, r;
  l.add(1, e.S(shuffle(index_elem(a), index_elem(b))));
  r.add(weight(b) % 2 ? -1 : 1, e.S(target));
  return verify_identity(l, r, e.N());
}

Real check_reversal(MesEngine& e, const Index& k) {
  LinearExpr l, r;
  l.add(1, e.S(k));
  r.add(weight(k) % 2 ? -1 : 1, e.S(reversed_index(k)));
  return verify_identity(l, r, e.N());
}

}  // namespace mes
