#include "gpc/nre.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gpc/errors.hpp"

namespace gpc {

namespace {
NrePtr make(Nre::Kind kind, std::string label, NrePtr a, NrePtr b) {
  auto out = std::make_shared<Nre>();
  out->kind = kind;
  out->label = std::move(label);
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}
}  // namespace

NrePtr Nre::make_label(std::string a) { return make(Kind::Label, std::move(a), nullptr, nullptr); }
NrePtr Nre::inverse(std::string a) { return make(Kind::Inverse, std::move(a), nullptr, nullptr); }
NrePtr Nre::concat(NrePtr a, NrePtr b) { return make(Kind::Concat, "", std::move(a), std::move(b)); }
NrePtr Nre::alt(NrePtr a, NrePtr b) { return make(Kind::Union, "", std::move(a), std::move(b)); }
NrePtr Nre::plus(NrePtr a) { return make(Kind::Plus, "", std::move(a), nullptr); }
NrePtr Nre::star(NrePtr a) { return make(Kind::Star, "", std::move(a), nullptr); }
NrePtr Nre::nest(NrePtr a) { return make(Kind::Nest, "", std::move(a), nullptr); }

bool operator==(const Nre& a, const Nre& b) {
  if (a.kind != b.kind || a.label != b.label) return false;
  auto same = [](const NrePtr& x, const NrePtr& y) { return x == y || (x && y && *x == *y); };
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

bool is_regex(const Nre& e) {
  switch (e.kind) {
    case Nre::Kind::Label:
    case Nre::Kind::Inverse:
      return true;
    case Nre::Kind::Concat:
    case Nre::Kind::Union:
      return is_regex(*e.lhs) && is_regex(*e.rhs);
    case Nre::Kind::Plus:
    case Nre::Kind::Star:
      return is_regex(*e.lhs);
    case Nre::Kind::Nest:
      return false;
  }
  return false;
}

std::size_t operator_count(const Nre& e) {
  switch (e.kind) {
    case Nre::Kind::Label:
    case Nre::Kind::Inverse:
      return 0;
    case Nre::Kind::Concat:
    case Nre::Kind::Union:
      return 1 + operator_count(*e.lhs) + operator_count(*e.rhs);
    default:
      return 1 + operator_count(*e.lhs);
  }
}

std::size_t nest_depth(const Nre& e) {
  switch (e.kind) {
    case Nre::Kind::Label:
    case Nre::Kind::Inverse:
      return 0;
    case Nre::Kind::Concat:
    case Nre::Kind::Union:
      return std::max(nest_depth(*e.lhs), nest_depth(*e.rhs));
    case Nre::Kind::Nest:
      return 1 + nest_depth(*e.lhs);
    default:
      return nest_depth(*e.lhs);
  }
}

namespace {

// 0: union, 1: concat, 2: postfix/atom.
int precedence(const Nre& e) {
  if (e.kind == Nre::Kind::Union) return 0;
  if (e.kind == Nre::Kind::Concat) return 1;
  return 2;
}

std::string render_at(const Nre& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case Nre::Kind::Label:
      out = e.label;
      break;
    case Nre::Kind::Inverse:
      out = e.label + "^-";
      break;
    case Nre::Kind::Concat:
      out = render_at(*e.lhs, 1) + "." + render_at(*e.rhs, 2);
      break;
    case Nre::Kind::Union:
      out = render_at(*e.lhs, 0) + "|" + render_at(*e.rhs, 1);
      break;
    case Nre::Kind::Plus:
      out = render_at(*e.lhs, 2) + "+";
      break;
    case Nre::Kind::Star:
      out = render_at(*e.lhs, 2) + "*";
      break;
    case Nre::Kind::Nest:
      out = "[" + render_at(*e.lhs, 0) + "]";
      break;
  }
  if (precedence(e) < min_prec) return "(" + out + ")";
  return out;
}

class NreParser {
 public:
  explicit NreParser(std::string_view text) : text_(text) {}

  NrePtr whole() {
    auto e = parse_union();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input", {"end of input"});
    return e;
  }

  C2rpq c2rpq() {
    C2rpq q;
    std::string head = ident("Ans");
    if (head != "Ans") fail("expected rule head", {"Ans"});
    expect('(');
    if (!accept(')')) {
      do {
        q.head.push_back(ident("variable"));
      } while (accept(','));
      expect(')');
    }
    expect('<');
    expect('-');
    do {
      expect('(');
      C2rpqAtom atom;
      atom.source = ident("variable");
      expect(',');
      atom.regex = parse_union();
      expect(',');
      atom.target = ident("variable");
      expect(')');
      if (!is_regex(*atom.regex)) fail("C2RPQ atoms take nest-free expressions", {});
      q.atoms.push_back(std::move(atom));
    } while (accept(','));
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input", {"end of input"});
    std::set<std::string> vars;
    for (const auto& a : q.atoms) {
      vars.insert(a.source);
      vars.insert(a.target);
    }
    for (const auto& x : q.head) {
      if (!vars.contains(x)) fail("head variable '" + x + "' does not occur in any atom", {});
    }
    return q;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", {std::string(1, c)});
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message + " at " + std::to_string(line) + ":" + std::to_string(column), line,
                     column, std::move(expected));
  }

  std::string ident(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail(std::string("expected ") + what, {what});
    return std::string(text_.substr(start, pos_ - start));
  }

  NrePtr parse_union() {
    auto e = parse_concat();
    while (accept('|')) e = Nre::alt(e, parse_concat());
    return e;
  }

  NrePtr parse_concat() {
    auto e = parse_post();
    while (accept('.')) e = Nre::concat(e, parse_post());
    return e;
  }

  NrePtr parse_post() {
    auto e = parse_atom();
    while (true) {
      if (accept('+')) {
        e = Nre::plus(e);
      } else if (accept('*')) {
        e = Nre::star(e);
      } else {
        return e;
      }
    }
  }

  NrePtr parse_atom() {
    if (accept('(')) {
      auto e = parse_union();
      expect(')');
      return e;
    }
    if (accept('[')) {
      auto e = parse_union();
      expect(']');
      return Nre::nest(e);
    }
    std::string a = ident("label");
    if (text_.substr(pos_).starts_with("^-")) {
      pos_ += 2;
      return Nre::inverse(a);
    }
    return Nre::make_label(a);
  }
};

}  // namespace

std::string render(const Nre& e) { return render_at(e, 0); }

NrePtr parse_nre(std::string_view text) { return NreParser(text).whole(); }

std::string render(const C2rpq& q) {
  std::string out = "Ans(";
  for (std::size_t i = 0; i < q.head.size(); ++i) {
    if (i > 0) out += ", ";
    out += q.head[i];
  }
  out += ") <- ";
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += "(" + q.atoms[i].source + ", " + render(*q.atoms[i].regex) + ", " + q.atoms[i].target + ")";
  }
  return out;
}

C2rpq parse_c2rpq(std::string_view text) { return NreParser(text).c2rpq(); }

}  // namespace gpc
