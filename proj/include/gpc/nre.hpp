#pragma once

// Nested regular expressions (2RPQ regexes are the nest-free fragment) and
// conjunctive 2RPQs.
//
// Text syntax:
//   nre    := concat ("|" concat)*
//   concat := post ("." post)*
//   post   := atom ("+" | "*")*
//   atom   := LABEL | LABEL "^-" | "(" nre ")" | "[" nre "]"
//
//   c2rpq  := "Ans" "(" vars? ")" "<-" atom ("," atom)*
//   atom   := "(" VAR "," nre "," VAR ")"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gpc {

struct Nre;
using NrePtr = std::shared_ptr<const Nre>;

struct Nre {
  enum class Kind { Label, Inverse, Concat, Union, Plus, Star, Nest };

  Kind kind = Kind::Label;
  std::string label;  // Label, Inverse
  NrePtr lhs;         // operand of Plus, Star, Nest
  NrePtr rhs;

  static NrePtr make_label(std::string a);
  static NrePtr inverse(std::string a);
  static NrePtr concat(NrePtr a, NrePtr b);
  static NrePtr alt(NrePtr a, NrePtr b);
  static NrePtr plus(NrePtr a);
  static NrePtr star(NrePtr a);
  static NrePtr nest(NrePtr a);
};

bool operator==(const Nre& a, const Nre& b);

// No Nest anywhere.
bool is_regex(const Nre& e);
std::size_t operator_count(const Nre& e);
std::size_t nest_depth(const Nre& e);

std::string render(const Nre& e);
NrePtr parse_nre(std::string_view text);

struct C2rpqAtom {
  std::string source;
  NrePtr regex;
  std::string target;
};

struct C2rpq {
  std::vector<std::string> head;
  std::vector<C2rpqAtom> atoms;
};

std::string render(const C2rpq& q);
C2rpq parse_c2rpq(std::string_view text);

}  // namespace gpc
