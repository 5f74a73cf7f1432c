#include "modflow/cuntz.hpp"

#include <algorithm>
#include <cctype>

#include "modflow/modular.hpp"

namespace modflow::cuntz {

namespace {

bool is_prefix(const std::vector<int>& p, const std::vector<int>& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

std::vector<int> drop_prefix(const std::vector<int>& w, std::size_t k) {
  return {w.begin() + long(k), w.end()};
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_word(const Word& w, int n) {
  if (w.alpha.size() > Model::kMaxWordLength || w.beta.size() > Model::kMaxWordLength)
    throw std::invalid_argument("cuntz word exceeds the length cap");
  for (int idx : concat(w.alpha, w.beta))
    if (idx < 1 || idx > n) throw std::invalid_argument("cuntz generator index out of range");
}

}  // namespace

Model::Model(int n) : n_(n) {
  if (n < 2 || n > kMaxGenerators)
    throw std::invalid_argument("cuntz model needs 2 <= n <= 16");
}

double Model::beta() const { return std::log(double(n_)); }

Model::Component Model::word_component(const Word& w, RationalComplex coeff) const {
  check_word(w, n_);
  Component c{n_, {}};
  if (!coeff.is_zero()) c.terms.emplace(w, std::move(coeff));
  return c;
}

Model::Component Model::mul(const Component& a, const Component& b) const {
  Component out{n_, {}};
  for (const auto& [u, cu] : a.terms) {
    for (const auto& [w, cw] : b.terms) {
      // (S_a S_b*)(S_g S_d*): reduce S_b* S_g by prefix matching.
      Word prod;
      if (is_prefix(u.beta, w.alpha)) {
        prod = Word{concat(u.alpha, drop_prefix(w.alpha, u.beta.size())), w.beta};
      } else if (is_prefix(w.alpha, u.beta)) {
        prod = Word{u.alpha, concat(w.beta, drop_prefix(u.beta, w.alpha.size()))};
      } else {
        continue;
      }
      check_word(prod, n_);
      auto coeff = cu * cw;
      auto [it, fresh] = out.terms.try_emplace(prod, coeff);
      if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }
  return out;
}

Model::Component Model::adj(const Component& a) const {
  Component out{n_, {}};
  for (const auto& [w, c] : a.terms) out.terms.emplace(w.adjoint(), c.conj());
  return out;
}

Model::Component Model::add(const Component& a, const Component& b) const {
  Component out = a;
  out.n = n_;
  for (const auto& [w, c] : b.terms) {
    auto [it, fresh] = out.terms.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

Model::Component Model::scale(const Scalar& s, const Component& a) const {
  Component out{n_, {}};
  if (s.is_zero()) return out;
  for (const auto& [w, c] : a.terms) out.terms.emplace(w, s * c);
  return out;
}

double Model::norm(const Component& a) const {
  double out = 0.0;
  for (const auto& [w, c] : a.terms) out += c.magnitude1();
  return out;
}

Model::Component Model::one() const { return word_component(Word{}, RationalComplex(1)); }

RationalComplex Model::tau_exact(const Component& a) const {
  RationalComplex out;
  for (const auto& [w, c] : a.terms) {
    if (w.alpha == w.beta)
      out += c * RationalComplex{rational_pow(Rational(n_), -long(w.alpha.size()))};
  }
  return out;
}

Element word_element(const Model& m, const Word& w, RationalComplex coeff) {
  return Element::homogeneous(m, w.degree(), m.word_component(w, std::move(coeff)));
}

RationalComplex phi_exact(const Model& m, const Element& a) {
  return a.has_degree(0) ? m.tau_exact(a.part(0)) : RationalComplex{};
}

Rational spectral_trace_exact(const Model& m, const Element& f, long k) {
  if (f.max_degree() != 0 || f.min_degree() != 0)
    throw std::invalid_argument("spectral_trace: degree-zero element required");
  const auto t = phi_exact(m, f);
  if (!(t.im == 0)) throw std::invalid_argument("spectral_trace: non-real trace value");
  return rational_pow(Rational(m.generators()), k) * t.re;
}

Rational exact_spectral_flow(const Model& m, const Element& v) {
  const auto rep = classify_modular(m, v, 1e-12);
  if (!rep.is_modular || rep.max_violation != 0.0)
    throw std::invalid_argument("exact_spectral_flow: element is not modular");
  Rational out{0};
  for (const auto& [k, x] : v.parts()) {
    if (k == 0) continue;
    const auto f = m.mul(x, m.adj(x));
    out += Rational(-k) * m.tau_exact(f).re;
  }
  return out;
}

ExactLaurentPolynomial exact_equivariant_flow(const Model& m, const Element& v) {
  const auto rep = classify_modular(m, v, 1e-12);
  if (!rep.is_modular || rep.max_violation != 0.0)
    throw std::invalid_argument("exact_equivariant_flow: element is not modular");
  ExactLaurentPolynomial out;
  const Rational base{m.generators()};
  for (const auto& [k, x] : v.parts()) {
    if (k == 0) continue;
    const Rational t = m.tau_exact(m.mul(x, m.adj(x))).re;
    if (k < 0) {
      for (long n = k; n < 0; ++n) out.add_term(n, rational_pow(base, n) * t);
    } else {
      for (long n = 0; n < k; ++n) out.add_term(n, -rational_pow(base, n) * t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word literals
// ---------------------------------------------------------------------------

namespace {

struct Scanner {
  const std::string& s;
  std::size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  std::vector<int> index_list(int n) {
    std::vector<int> out;
    if (!eat('[')) throw ParseError(pos, "expected '['");
    if (eat(']')) return out;  // empty list = identity block
    while (true) {
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError(pos, "expected generator index");
      int v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = v * 10 + (s[pos] - '0');
        ++pos;
      }
      if (v < 1 || v > n) throw ParseError(pos, "generator index out of range");
      out.push_back(v);
      if (eat(']')) return out;
      if (!eat(',')) throw ParseError(pos, "expected ',' or ']'");
    }
  }
};

}  // namespace

Word parse_word(const std::string& text, int n) {
  Scanner sc{text};
  Word w;
  bool saw_any = false;
  if (sc.peek() == 'S' && !(sc.pos + 1 < text.size() && text[sc.pos + 1] == '*')) {
    sc.eat('S');
    w.alpha = sc.index_list(n);
    saw_any = true;
  }
  if (sc.eat('.')) {
    // separator; a star block may follow
  }
  if (sc.peek() == 'S') {
    sc.eat('S');
    if (!sc.eat('*')) throw ParseError(sc.pos, "expected 'S*' block");
    w.beta = sc.index_list(n);
    saw_any = true;
  }
  if (!sc.eof()) throw ParseError(sc.pos, "trailing input after word");
  if (!saw_any && !text.empty()) throw ParseError(0, "unrecognised word literal");
  if (w.alpha.size() > Model::kMaxWordLength || w.beta.size() > Model::kMaxWordLength)
    throw ParseError(text.size(), "word exceeds the length cap");
  return w;
}

std::string to_string(const Word& w) {
  auto list = [](const std::vector<int>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(xs[i]);
    }
    return out + "]";
  };
  if (w.alpha.empty() && w.beta.empty()) return "S[].S*[]";
  std::string out;
  if (!w.alpha.empty()) out += "S" + list(w.alpha);
  if (!w.beta.empty()) {
    if (!out.empty()) out += ".";
    out += "S*" + list(w.beta);
  }
  return out;
}

}  // namespace modflow::cuntz
