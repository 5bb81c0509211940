#pragma once

// Trace words: real functions of the form coeff * (Re|Im) tr(L_1 L_2 ... L_m)
// where each letter stands for one of the matrix variables of the phase space
// (g, g^{-1}, J), of the double (X, Y), or for a fixed constant matrix.
//
// Gradients are obtained by cyclic differentiation: varying one occurrence of
// a letter changes the trace by tr(V R) where R is the cyclic product of the
// remaining letters starting right after the varied position.

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redint/lie_core.hpp"

namespace redint {

enum class Letter : std::uint8_t { G, Ginv, J, X, Y, Const };
enum class Part : std::uint8_t { Re, Im };

std::string_view letter_name(Letter l);

struct Factor {
  Letter letter = Letter::J;
  Matrix value;  // only meaningful for Letter::Const

  static Factor of(Letter l) { return Factor{l, Matrix{}}; }
  static Factor constant(Matrix m) { return Factor{Letter::Const, std::move(m)}; }
};

struct TraceWord {
  std::vector<Factor> factors;
  Part part = Part::Re;
  double coeff = 1.0;

  static TraceWord of(std::initializer_list<Letter> letters, Part part = Part::Re,
                      double coeff = 1.0);
  static TraceWord of(std::span<const Letter> letters, Part part = Part::Re, double coeff = 1.0);

  bool has_constants() const;
  bool uses_only(std::initializer_list<Letter> allowed) const;
};

/// Matrices bound to the letters of a word. Unused letters may stay null.
struct Assignment {
  const Matrix* g = nullptr;
  const Matrix* ginv = nullptr;
  const Matrix* j = nullptr;
  const Matrix* x = nullptr;
  const Matrix* y = nullptr;
};

/// tr(L_1 ... L_m) without coefficient or part selection.
cplx word_trace(const TraceWord& w, const Assignment& a);

/// coeff * part(tr(...)).
double eval_word(const TraceWord& w, const Assignment& a);

/// Complex K with d/dt eval_word|_{slot -> slot + tV} = Re tr(V K);
/// slot must be an additive letter (J, X or Y).
Matrix additive_cotangent(const TraceWord& w, Letter slot, const Assignment& a);

enum class GroupSide { Left, Right };

/// Complex K with d/dt eval_word|_{g -> e^{tV} g} = Re tr(V K) (Left), or
/// with g -> g e^{tV} (Right). Occurrences of g^{-1} vary consistently.
Matrix group_cotangent(const TraceWord& w, GroupSide side, const Assignment& a);

/// Replaces every occurrence of `from` with the letter sequence `to`.
TraceWord substitute(const TraceWord& w, Letter from, std::span<const Letter> to);

/// Text form `coeff * Re tr(L1*L2*...)`; terms joined with ` + `. Coefficients
/// print with 17 significant digits so parsing the text reproduces them
/// exactly. Words containing constants have no text form.
std::string format_terms(std::span<const TraceWord> terms);

/// Parses the text form. Accepts `+`/`-` between terms, an optional
/// coefficient (default 1), and `*` or whitespace between letters.
std::vector<TraceWord> parse_terms(std::string_view text,
                                   std::initializer_list<Letter> allowed);

}  // namespace redint
