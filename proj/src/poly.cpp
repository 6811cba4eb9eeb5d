#include "cliffib/poly.hpp"

#include "cliffib/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cliffib {

MultiPoly MultiPoly::variable(std::vector<std::string> vars, size_t index, unsigned power) {
  Monomial m(vars.size(), 0);
  m.at(index) = power;
  return monomial(std::move(vars), std::move(m), 1);
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Monomial m, Rational c) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  if (m.size() != p.vars_.size()) throw std::invalid_argument("monomial length mismatch");
  if (!cliffib::is_zero(c)) p.terms_[std::move(m)] = std::move(c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("constant_value of non-constant polynomial");
  return terms_.begin()->second;
}

unsigned MultiPoly::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::trim(const Monomial& key) {
  auto it = terms_.find(key);
  if (it != terms_.end() && cliffib::is_zero(it->second)) terms_.erase(it);
}

MultiPoly promote(const MultiPoly& p, const std::vector<std::string>& vars) {
  if (p.vars_ == vars) return p;
  if (!p.is_constant())
    throw std::logic_error("polynomial variable contexts differ: [" +
                           (p.vars_.empty() ? std::string() : p.vars_[0]) + "...] vs target");
  MultiPoly q;
  q.vars_ = vars;
  if (!p.is_zero()) q.terms_[Monomial(vars.size(), 0)] = p.constant_value();
  return q;
}

void MultiPoly::align(MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return;
  if (a.is_constant() && !(b.is_constant() && b.vars_.size() < a.vars_.size()))
    a = promote(a, b.vars_);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(*this);
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  align(*this, o);
  const MultiPoly tmp = (o.vars_ == vars_) ? o : promote(o, vars_);
  for (const auto& [m, c] : tmp.terms_) {
    terms_[m] += c;
    trim(m);
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  align(*this, o);
  const MultiPoly tmp = (o.vars_ == vars_) ? o : promote(o, vars_);
  for (const auto& [m, c] : tmp.terms_) {
    terms_[m] -= c;
    trim(m);
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  align(*this, o);
  const MultiPoly tmp = (o.vars_ == vars_) ? o : promote(o, vars_);
  std::map<Monomial, Rational, GrlexLess> out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : tmp.terms_) {
      Monomial m(ma);
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out[std::move(m)] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = cliffib::is_zero(it->second) ? out.erase(it) : std::next(it);
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (cliffib::is_zero(c)) { terms_.clear(); return *this; }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  if (is_constant() && o.is_constant()) return constant_value() == o.constant_value();
  if (is_constant()) return promote(*this, o.vars_) == o;
  if (o.is_constant()) return *this == promote(o, vars_);
  return false;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = MultiPoly::constant(vars_, 1);
  MultiPoly base(*this);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

MultiPoly MultiPoly::derivative(size_t var_index) const {
  MultiPoly out = MultiPoly::zero(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.at(var_index) == 0) continue;
    Monomial d(m);
    unsigned e = d[var_index]--;
    out.terms_[std::move(d)] += c * Rational(e);
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();)
    it = cliffib::is_zero(it->second) ? out.terms_.erase(it) : std::next(it);
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw input_error("POINT_LENGTH", "evaluation point has wrong length");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return 0;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  return content;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  // sign normalized so the grlex-leading coefficient is positive
  if (sgn(terms_.rbegin()->second) < 0) c = -c;
  MultiPoly out(*this);
  for (auto& [m, v] : out.terms_) v /= c;
  return out;
}

std::string MultiPoly::print() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending grlex
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) { os << "-"; a = -a; }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool has_vars = total_degree(m) > 0;
    if (!has_vars || a != 1) {
      os << a.get_str();
      if (has_vars) os << "*";
    }
    bool star = false;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (star) os << "*";
      star = true;
      os << vars_[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("SYNTAX",
                      "parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  MultiPoly expr() {
    bool neg = false;
    skip_ws();
    while (peek() == '+' || peek() == '-') {
      if (eat('-')) neg = !neg;
      else eat('+');
    }
    MultiPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      char c = peek();
      if (c == '+') { eat('+'); acc += term(); }
      else if (c == '-') { eat('-'); acc -= term(); }
      else break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek() == '*') {
      eat('*');
      acc *= factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (peek() == '^') {
      eat('^');
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("exponent must be a nonnegative integer");
      unsigned e = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        e = e * 10 + static_cast<unsigned>(text[pos++] - '0');
      return base.pow(e);
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      MultiPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') { ++pos; return -atom(); }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail(std::string("unexpected character '") + c + "'");
  }

  MultiPoly number() {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string num = text.substr(start, pos - start);
    // rational literal p/q: the slash binds tighter than any operator
    size_t save = pos;
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      skip_ws();
      size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (dstart == pos) fail("expected denominator digits after '/'");
      return MultiPoly::constant(vars,
                                 rational_from_string(num + "/" + text.substr(dstart, pos - dstart)));
    }
    pos = save;
    return MultiPoly::constant(vars, rational_from_string(num));
  }

  MultiPoly variable() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return MultiPoly::variable(vars, i);
    pos = start;
    throw input_error("UNKNOWN_VARIABLE", "unknown variable '" + name + "' at position " +
                                              std::to_string(start));
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  Parser p{text, vars};
  MultiPoly out = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return promote(out, vars);
}

namespace {

// dense univariate coefficient list, low degree first
std::vector<Rational> uni_coeffs(const MultiPoly& p, size_t var_index) {
  std::vector<Rational> c;
  for (const auto& [m, v] : p.terms()) {
    for (size_t i = 0; i < m.size(); ++i)
      if (i != var_index && m[i] != 0)
        throw std::logic_error("gcd_univariate: polynomial is not univariate");
    unsigned e = m[var_index];
    if (c.size() <= e) c.resize(e + 1, Rational(0));
    c[e] = v;
  }
  while (!c.empty() && is_zero(c.back())) c.pop_back();
  return c;
}

}  // namespace

MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b, size_t var_index) {
  std::vector<Rational> fa = uni_coeffs(a, var_index), fb = uni_coeffs(b, var_index);
  while (!fb.empty()) {
    // fa mod fb
    while (fa.size() >= fb.size() && !fa.empty()) {
      Rational q = fa.back() / fb.back();
      size_t shift = fa.size() - fb.size();
      for (size_t i = 0; i < fb.size(); ++i) fa[i + shift] -= q * fb[i];
      while (!fa.empty() && is_zero(fa.back())) fa.pop_back();
    }
    std::swap(fa, fb);
  }
  MultiPoly g = MultiPoly::zero(a.vars());
  if (fa.empty()) return g;
  for (size_t e = 0; e < fa.size(); ++e) {
    if (is_zero(fa[e])) continue;
    Monomial m(a.vars().size(), 0);
    m[var_index] = static_cast<unsigned>(e);
    g += MultiPoly::monomial(a.vars(), m, fa[e] / fa.back());
  }
  return g;
}

PolyMatrix poly_matrix_from_rational(const QMatrix& m, const std::vector<std::string>& vars) {
  PolyMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = MultiPoly::constant(vars, m(i, j));
  return out;
}

QMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<Rational>& point) {
  QMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  return out;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("poly matrix product: shape mismatch");
  PolyMatrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      MultiPoly acc;
      for (Index k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  return out;
}

MultiPoly det_poly(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return MultiPoly(Rational(1));
  // subset DP over column sets: row r expands against subsets of size r+1
  std::vector<MultiPoly> cur(1u << n);
  cur[0] = MultiPoly::constant(m(0, 0).vars(), 1);
  for (int r = 0; r < n; ++r) {
    std::vector<MultiPoly> next(1u << n);
    for (unsigned s = 0; s < (1u << n); ++s) {
      if (__builtin_popcount(s) != r || cur[s].is_zero()) continue;
      int seen = 0;
      for (int c = 0; c < n; ++c) {
        if (s & (1u << c)) continue;
        if (!m(r, c).is_zero()) {
          MultiPoly t = cur[s] * m(r, c);
          if (seen & 1) t = -t;
          next[s | (1u << c)] += t;
        }
        ++seen;
      }
    }
    cur = std::move(next);
  }
  return cur[(1u << n) - 1];
}

std::vector<MultiPoly> minors(const PolyMatrix& m, Index k, bool deduplicate) {
  std::vector<MultiPoly> out;
  if (k <= 0 || k > m.rows() || k > m.cols()) return out;
  std::vector<Index> rows(k), cols(k);
  std::vector<std::string> seen;
  auto next_combo = [](std::vector<Index>& c, Index n) {
    Index k2 = static_cast<Index>(c.size());
    for (Index i = k2 - 1; i >= 0; --i) {
      if (c[i] < n - (k2 - i)) {
        ++c[i];
        for (Index j = i + 1; j < k2; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (Index i = 0; i < k; ++i) rows[i] = i;
  do {
    for (Index i = 0; i < k; ++i) cols[i] = i;
    do {
      PolyMatrix sub(k, k);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      MultiPoly d = det_poly(sub);
      if (d.is_zero()) continue;
      if (deduplicate) {
        MultiPoly normalized = d;
        if (sgn(normalized.terms().rbegin()->second) < 0) normalized = -normalized;
        std::string key = normalized.print();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        out.push_back(std::move(normalized));
      } else {
        out.push_back(std::move(d));
      }
    } while (next_combo(cols, m.cols()));
  } while (next_combo(rows, m.rows()));
  return out;
}

GenericRank generic_rank(const PolyMatrix& m, Index trials, Rng& rng, long bound) {
  if (trials < 1) throw input_error("TRIALS", "generic_rank needs trials >= 1");
  size_t nvars = 0;
  for (Index i = 0; i < m.rows() && nvars == 0; ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).vars().empty()) { nvars = m(i, j).vars().size(); break; }
  GenericRank out;
  out.trials = trials;
  out.bound = bound;
  const Index max_rank = std::min(m.rows(), m.cols());
  for (Index t = 0; t < trials; ++t) {
    std::vector<Rational> pt;
    pt.reserve(nvars);
    for (size_t i = 0; i < nvars; ++i) pt.emplace_back(rng.integer(bound));
    QMatrix spec(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        spec(i, j) = m(i, j).is_constant() ? m(i, j).constant_value() : m(i, j).evaluate(pt);
    Index r = rank_bareiss(spec);
    if (r > out.rank || t == 0) {
      out.rank = r;
      out.witness = pt;
    }
    if (out.rank == max_rank) break;
  }
  out.full_rank_certified = (out.rank == max_rank);
  return out;
}

}  // namespace cliffib
