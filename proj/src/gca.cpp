#include "rho/gca.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rho {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  try {
    Rational q{std::string(text)};
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

bool Monomial::operator<(const Monomial& o) const {
  if (degree_ != o.degree_) return degree_ < o.degree_;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != o.exps_[i]) return exps_[i] > o.exps_[i];
  }
  return false;
}

GcaPtr FreeGCA::make(std::vector<Generator> gens) {
  std::set<std::string> names;
  for (const auto& g : gens) {
    if (g.degree < 1) throw DegreeMismatch("generator " + g.name + " has degree < 1");
    if (!names.insert(g.name).second)
      throw Error("duplicate generator name in algebra: " + g.name);
  }
  return GcaPtr(new FreeGCA(std::move(gens)));
}

int FreeGCA::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].name == name) return i;
  return -1;
}

std::optional<Monomial> FreeGCA::monomial(std::vector<int> exps) const {
  if (int(exps.size()) != size()) throw Error("monomial: exponent count mismatch");
  int deg = 0;
  for (int i = 0; i < size(); ++i) {
    if (exps[i] < 0) throw Error("monomial: negative exponent");
    if (is_odd(i) && exps[i] >= 2) return std::nullopt;
    deg += exps[i] * gens_[i].degree;
  }
  return Monomial(std::move(exps), deg);
}

Monomial FreeGCA::one() const { return Monomial(std::vector<int>(size(), 0), 0); }

std::optional<std::pair<int, Monomial>> FreeGCA::mul(const Monomial& a, const Monomial& b) const {
  std::vector<int> e(size());
  for (int i = 0; i < size(); ++i) {
    e[i] = a.exponent(i) + b.exponent(i);
    if (is_odd(i) && e[i] >= 2) return std::nullopt;
  }
  // Koszul sign: one transposition per pair of odd factors that must swap
  // past each other when sorting the concatenated word.
  int sign = 1;
  for (int i = 0; i < size(); ++i) {
    if (!is_odd(i) || a.exponent(i) == 0) continue;
    int inversions = 0;
    for (int j = 0; j < i; ++j)
      if (is_odd(j) && b.exponent(j)) ++inversions;
    if (inversions % 2) sign = -sign;
  }
  return std::make_pair(sign, Monomial(std::move(e), a.degree() + b.degree()));
}

std::vector<Monomial> FreeGCA::basis_in_degree(int n) const {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<int> cur(size(), 0);
  // Descending exponent loops produce canonical (word-lex) order directly.
  auto rec = [&](auto&& self, int i, int rem) -> void {
    if (i == size()) {
      if (rem == 0) out.push_back(Monomial(cur, n));
      return;
    }
    int maxe = is_odd(i) ? std::min(1, rem / gens_[i].degree) : rem / gens_[i].degree;
    for (int e = maxe; e >= 0; --e) {
      cur[i] = e;
      self(self, i + 1, rem - e * gens_[i].degree);
    }
    cur[i] = 0;
  };
  rec(rec, 0, n);
  return out;
}

Element Element::one(GcaPtr alg) {
  Element x(alg);
  x.add_term(alg->one(), 1);
  return x;
}

Element Element::gen(const GcaPtr& alg, int index) {
  std::vector<int> e(alg->size(), 0);
  e[index] = 1;
  return term(alg, *alg->monomial(std::move(e)), 1);
}

Element Element::term(GcaPtr alg, const Monomial& m, Rational c) {
  Element x(std::move(alg));
  x.add_term(m, c);
  return x;
}

std::optional<int> Element::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool Element::is_homogeneous() const {
  return terms_.empty() || homogeneous_degree().has_value();
}

bool Element::is_homogeneous_of(int n) const {
  if (terms_.empty()) return true;  // zero is homogeneous of every degree
  auto d = homogeneous_degree();
  return d && *d == n;
}

Element& Element::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return *this;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

void Element::check_same(const Element& o) const {
  if (alg_ != o.alg_) throw MixedAlgebras("elements belong to different algebras");
}

Element Element::operator-() const {
  Element r(alg_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  Element r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Element Element::operator-(const Element& o) const {
  check_same(o);
  Element r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Element Element::operator*(const Element& o) const {
  check_same(o);
  Element r(alg_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      auto p = alg_->mul(m1, m2);
      if (!p) continue;
      r.add_term(p->second, c1 * c2 * p->first);
    }
  }
  return r;
}

Element Element::operator*(const Rational& c) const {
  Element r(alg_);
  if (c == 0) return r;
  for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
  return r;
}

bool Element::operator==(const Element& o) const {
  return alg_ == o.alg_ && terms_ == o.terms_;
}

Element Element::pow(int n) const {
  Element r = Element::one(alg_);
  for (int i = 0; i < n; ++i) r = r * (*this);
  return r;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string monomial_str(const FreeGCA& alg, const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < alg.size(); ++i) {
    int e = m.exponent(i);
    if (e == 0) continue;
    if (!first) os << "*";
    os << alg.gen(i).name;
    if (e > 1) os << "^" << e;
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (m.is_one()) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << " ";
      os << monomial_str(*alg_, m);
    }
    first = false;
  }
  return os.str();
}

AlgebraMorphism::AlgebraMorphism(GcaPtr source, GcaPtr target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (int(images_.size()) != source_->size())
    throw Error("morphism: one image per source generator required");
  for (int i = 0; i < source_->size(); ++i) {
    if (images_[i].algebra() != target_)
      throw MixedAlgebras("morphism image lies in the wrong algebra");
    if (!images_[i].is_homogeneous_of(source_->gen(i).degree))
      throw DegreeMismatch("morphism image of " + source_->gen(i).name +
                           " is not homogeneous of degree " +
                           std::to_string(source_->gen(i).degree));
  }
}

AlgebraMorphism AlgebraMorphism::identity(const GcaPtr& alg) {
  std::vector<Element> images;
  for (int i = 0; i < alg->size(); ++i) images.push_back(Element::gen(alg, i));
  return AlgebraMorphism(alg, alg, std::move(images));
}

Element AlgebraMorphism::apply(const Element& x) const {
  if (x.algebra() != source_) throw MixedAlgebras("morphism applied to foreign element");
  Element out(target_);
  for (const auto& [m, c] : x.terms()) {
    Element y = Element::one(target_);
    for (int i = 0; i < source_->size(); ++i) {
      for (int e = 0; e < m.exponent(i); ++e) y = y * images_[i];
    }
    out = out + y * c;
  }
  return out;
}

}  // namespace rho
