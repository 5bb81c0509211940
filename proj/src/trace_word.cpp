#include "redint/trace_word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace redint {

std::string_view letter_name(Letter l) {
  switch (l) {
    case Letter::G: return "G";
    case Letter::Ginv: return "Ginv";
    case Letter::J: return "J";
    case Letter::X: return "X";
    case Letter::Y: return "Y";
    case Letter::Const: return "C";
  }
  return "?";
}

TraceWord TraceWord::of(std::initializer_list<Letter> letters, Part part, double coeff) {
  return of(std::span<const Letter>(letters.begin(), letters.size()), part, coeff);
}

TraceWord TraceWord::of(std::span<const Letter> letters, Part part, double coeff) {
  TraceWord w;
  w.factors.reserve(letters.size());
  for (Letter l : letters) w.factors.push_back(Factor::of(l));
  w.part = part;
  w.coeff = coeff;
  return w;
}

bool TraceWord::has_constants() const {
  return std::any_of(factors.begin(), factors.end(),
                     [](const Factor& f) { return f.letter == Letter::Const; });
}

bool TraceWord::uses_only(std::initializer_list<Letter> allowed) const {
  return std::all_of(factors.begin(), factors.end(), [&](const Factor& f) {
    return std::find(allowed.begin(), allowed.end(), f.letter) != allowed.end();
  });
}

namespace {

const Matrix& bound(const Factor& f, const Assignment& a) {
  const Matrix* m = nullptr;
  switch (f.letter) {
    case Letter::G: m = a.g; break;
    case Letter::Ginv: m = a.ginv; break;
    case Letter::J: m = a.j; break;
    case Letter::X: m = a.x; break;
    case Letter::Y: m = a.y; break;
    case Letter::Const: return f.value;
  }
  if (m == nullptr) {
    throw PreconditionError("trace word letter '" + std::string(letter_name(f.letter)) +
                            "' has no bound matrix");
  }
  return *m;
}

Eigen::Index assignment_size(const TraceWord& w, const Assignment& a) {
  if (w.factors.empty()) throw PreconditionError("trace word has no letters");
  const Eigen::Index n = bound(w.factors.front(), a).rows();
  for (const auto& f : w.factors) {
    if (bound(f, a).rows() != n || bound(f, a).cols() != n) {
      throw DimensionError("trace word letters bound to matrices of different sizes");
    }
  }
  return n;
}

// prefix[i] = L_0 ... L_{i-1}, suffix[i] = L_i ... L_{m-1}.
struct PartialProducts {
  std::vector<Matrix> prefix;
  std::vector<Matrix> suffix;

  PartialProducts(const TraceWord& w, const Assignment& a, Eigen::Index n) {
    const std::size_t m = w.factors.size();
    prefix.resize(m + 1);
    suffix.resize(m + 1);
    prefix[0] = Matrix::Identity(n, n);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * bound(w.factors[i], a);
    suffix[m] = Matrix::Identity(n, n);
    for (std::size_t i = m; i-- > 0;) suffix[i] = bound(w.factors[i], a) * suffix[i + 1];
  }

  // Cyclic product of all letters except position k, starting after k.
  Matrix rest(std::size_t k) const { return suffix[k + 1] * prefix[k]; }
};

Matrix apply_part(const TraceWord& w, Matrix m) {
  if (w.part == Part::Im) m *= cplx(0.0, -1.0);
  return w.coeff * m;
}

}  // namespace

cplx word_trace(const TraceWord& w, const Assignment& a) {
  const Eigen::Index n = assignment_size(w, a);
  Matrix prod = Matrix::Identity(n, n);
  for (const auto& f : w.factors) prod = prod * bound(f, a);
  return prod.trace();
}

double eval_word(const TraceWord& w, const Assignment& a) {
  const cplx t = word_trace(w, a);
  return w.coeff * (w.part == Part::Re ? t.real() : t.imag());
}

Matrix additive_cotangent(const TraceWord& w, Letter slot, const Assignment& a) {
  if (slot != Letter::J && slot != Letter::X && slot != Letter::Y) {
    throw PreconditionError("additive_cotangent: slot must be J, X or Y");
  }
  const Eigen::Index n = assignment_size(w, a);
  Matrix k = Matrix::Zero(n, n);
  bool any = false;
  for (const auto& f : w.factors) any = any || f.letter == slot;
  if (!any) return k;
  const PartialProducts pp(w, a, n);
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (w.factors[i].letter == slot) k += pp.rest(i);
  }
  return apply_part(w, std::move(k));
}

Matrix group_cotangent(const TraceWord& w, GroupSide side, const Assignment& a) {
  const Eigen::Index n = assignment_size(w, a);
  Matrix k = Matrix::Zero(n, n);
  bool any = false;
  for (const auto& f : w.factors) any = any || f.letter == Letter::G || f.letter == Letter::Ginv;
  if (!any) return k;
  const PartialProducts pp(w, a, n);
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    const Letter l = w.factors[i].letter;
    if (l == Letter::G) {
      // g -> e^{tV} g contributes tr(V g R); g -> g e^{tV} contributes tr(V R g).
      k += side == GroupSide::Left ? Matrix(*a.g * pp.rest(i)) : Matrix(pp.rest(i) * *a.g);
    } else if (l == Letter::Ginv) {
      // g^{-1} -> g^{-1} e^{-tV} or e^{-tV} g^{-1}.
      k -= side == GroupSide::Left ? Matrix(pp.rest(i) * *a.ginv) : Matrix(*a.ginv * pp.rest(i));
    }
  }
  return apply_part(w, std::move(k));
}

TraceWord substitute(const TraceWord& w, Letter from, std::span<const Letter> to) {
  TraceWord out;
  out.part = w.part;
  out.coeff = w.coeff;
  for (const auto& f : w.factors) {
    if (f.letter == from) {
      for (Letter l : to) out.factors.push_back(Factor::of(l));
    } else {
      out.factors.push_back(f);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text form

std::string format_terms(std::span<const TraceWord> terms) {
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const TraceWord& w = terms[t];
    if (w.has_constants()) throw PreconditionError("words with constants have no text form");
    if (t > 0) out += " + ";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", w.coeff);
    out += buf;
    out += w.part == Part::Re ? " * Re tr(" : " * Im tr(";
    for (std::size_t i = 0; i < w.factors.size(); ++i) {
      if (i > 0) out += '*';
      out += letter_name(w.factors[i].letter);
    }
    out += ')';
  }
  return out;
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::initializer_list<Letter> allowed)
      : s_(text), allowed_(allowed) {}

  std::vector<TraceWord> run() {
    std::vector<TraceWord> terms;
    skip_ws();
    if (at_end()) fail("empty expression");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    terms.push_back(term(sign));
    skip_ws();
    while (!at_end()) {
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-' between terms");
      ++pos_;
      terms.push_back(term(c == '-' ? -1.0 : 1.0));
      skip_ws();
    }
    return terms;
  }

 private:
  TraceWord term(double sign) {
    skip_ws();
    double coeff = 1.0;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
                      peek() == '-' || peek() == '+')) {
      coeff = number();
      skip_ws();
      if (!at_end() && peek() == '*') ++pos_;
    }
    skip_ws();
    const std::string part_name = ident();
    Part part;
    if (part_name == "Re") {
      part = Part::Re;
    } else if (part_name == "Im") {
      part = Part::Im;
    } else {
      fail("expected 'Re' or 'Im', got '" + part_name + "'");
    }
    skip_ws();
    if (ident() != "tr") fail("expected 'tr'");
    skip_ws();
    expect('(');
    TraceWord w;
    w.part = part;
    w.coeff = sign * coeff;
    for (;;) {
      skip_ws();
      if (!at_end() && peek() == ')') break;
      if (!w.factors.empty() && !at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      }
      w.factors.push_back(Factor::of(letter(ident())));
    }
    expect(')');
    if (w.factors.empty()) fail("empty word inside tr()");
    if (!std::isfinite(w.coeff)) fail("coefficient is not finite");
    return w;
  }

  double number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    if (*begin == '+') ++begin;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed coefficient");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  Letter letter(const std::string& name) {
    static constexpr Letter all[] = {Letter::G, Letter::Ginv, Letter::J, Letter::X, Letter::Y};
    for (Letter l : all) {
      if (name == letter_name(l)) {
        if (std::find(allowed_.begin(), allowed_.end(), l) == allowed_.end()) {
          fail("letter '" + name + "' is not allowed here");
        }
        return l;
      }
    }
    fail("unknown letter '" + name + "'");
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw PreconditionError("parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  std::initializer_list<Letter> allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<TraceWord> parse_terms(std::string_view text, std::initializer_list<Letter> allowed) {
  return TermParser(text, allowed).run();
}

}  // namespace redint
