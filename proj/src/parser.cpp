#include "spinel/parser.hpp"

#include <cctype>
#include <charconv>
#include <utility>

namespace spinel {

ParseError::ParseError(const std::string& message, Span span)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.col) + ": " +
                         message),
      span(span),
      message(message) {}

namespace {

enum class Tok {
  Ident, Meta, Op, Number, LParen, RParen, LBrack, RBrack,
  Dot, Colon, Slash, Lambda, TLambda, Arrow, Question, End,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_op_char(char c) {
  static const std::string_view ops = "+*&|<>=!~^%$#@";
  return ops.find(c) != std::string_view::npos;
}
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool is_keyword(std::string_view s) {
  return s == "type" || s == "assume" || s == "check" || s == "synth" || s == "forall";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (true) {
    while (i < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[i]))) {
        advance(1);
      } else if (src.compare(i, 2, "--") == 0) {
        while (i < src.size() && src[i] != '\n') advance(1);
      } else {
        break;
      }
    }
    Token tok{Tok::End, "", {line, col, line, col}, i, i};
    if (i >= src.size()) {
      out.push_back(tok);
      return out;
    }
    char c = src[i];
    std::size_t len = 1;
    if (is_ident_start(c)) {
      tok.kind = Tok::Ident;
      while (i + len < src.size() && is_ident_char(src[i + len])) ++len;
    } else if (c == '?' && i + 1 < src.size() && is_ident_start(src[i + 1])) {
      tok.kind = Tok::Meta;
      len = 2;
      while (i + len < src.size() && is_ident_char(src[i + len])) ++len;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Tok::Number;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
    } else if (src.compare(i, 2, "->") == 0) {
      tok.kind = Tok::Arrow;
      len = 2;
    } else if (src.compare(i, 2, "/\\") == 0) {
      tok.kind = Tok::TLambda;
      len = 2;
    } else if (is_op_char(c)) {
      tok.kind = Tok::Op;
      while (i + len < src.size() && is_op_char(src[i + len])) ++len;
    } else {
      switch (c) {
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        case '[': tok.kind = Tok::LBrack; break;
        case ']': tok.kind = Tok::RBrack; break;
        case '.': tok.kind = Tok::Dot; break;
        case ':': tok.kind = Tok::Colon; break;
        case '/': tok.kind = Tok::Slash; break;
        case '\\': tok.kind = Tok::Lambda; break;
        case '?': tok.kind = Tok::Question; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", tok.span);
      }
    }
    tok.text = std::string(src.substr(i, len));
    advance(len);
    tok.end = i;
    tok.span.end_line = line;
    tok.span.end_col = col;
    out.push_back(std::move(tok));
  }
}

Span join(const Span& a, const Span& b) { return {a.line, a.col, b.end_line, b.end_col}; }

class Parser {
 public:
  Parser(std::string_view src, Context ctx, bool allow_free)
      : src_(src), toks_(lex(src)), ctx_(std::move(ctx)), allow_free_(allow_free) {}

  Program program() {
    Program prog;
    while (peek().kind != Tok::End) {
      Statement st = statement();
      expect(Tok::Dot, "'.' to end the statement");
      prog.statements.push_back(std::move(st));
    }
    prog.context = ctx_;
    return prog;
  }

  Statement single_statement() {
    Statement st = statement();
    accept(Tok::Dot);
    expect(Tok::End, "end of input");
    return st;
  }

  Type whole_type() {
    Type t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  Prototype whole_prototype() {
    Prototype p = prototype();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& last() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) error(std::string("expected ") + what, peek());
    return next();
  }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  [[noreturn]] void error(const std::string& msg, const Token& at) const {
    std::string near = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
    throw ParseError(msg + " near " + near, at.span);
  }

  std::string binder_name(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_keyword(t.text)) error("keyword used as a name", t);
    return t.text;
  }

  bool type_var_in_scope(const std::string& name) const {
    for (const auto& s : scope_)
      if (s == name) return true;
    return ctx_.declares_type_var(name);
  }

  // ---- types

  Type type() {
    if (at_keyword("forall")) {
      next();
      const Token& at = peek();
      std::string name = binder_name("a type variable after 'forall'");
      if (ctx_.arity(name)) error("constructor name used as a type variable", at);
      expect(Tok::Dot, "'.' after the quantified variable");
      scope_.push_back(name);
      Type body = type();
      scope_.pop_back();
      return Type::forall(name, body);
    }
    Type lhs = infix();
    if (accept(Tok::Arrow)) return Type::arrow(lhs, type());
    return lhs;
  }

  Type infix() {
    Type lhs = applied();
    while (peek().kind == Tok::Op) {
      const Token& op = next();
      check_operator(op);
      lhs = Type::con(op.text, {lhs, applied()});
    }
    return lhs;
  }

  void check_operator(const Token& op) const {
    auto ar = ctx_.arity(op.text);
    if (!ar) error("undeclared type operator", op);
    if (*ar != 2) error("type operator is not binary", op);
  }

  bool at_type_atom() const {
    const Token& t = peek();
    return (t.kind == Tok::Ident && !is_keyword(t.text)) || t.kind == Tok::Meta ||
           t.kind == Tok::LParen;
  }

  Type applied() {
    const Token& head = peek();
    if (head.kind == Tok::Ident && !is_keyword(head.text)) {
      if (auto ar = ctx_.arity(head.text); ar && *ar > 0) {
        next();
        std::vector<Type> args;
        while (at_type_atom() && args.size() < *ar) args.push_back(atom_type());
        if (args.size() != *ar)
          error("constructor " + head.text + " expects " + std::to_string(*ar) +
                    " argument(s), got " + std::to_string(args.size()),
                head);
        return Type::con(head.text, std::move(args));
      }
    }
    return atom_type();
  }

  Type atom_type() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (is_keyword(t.text)) error("unexpected keyword in a type", t);
        next();
        if (auto ar = ctx_.arity(t.text)) {
          if (*ar != 0)
            error("constructor " + t.text + " expects " + std::to_string(*ar) +
                      " argument(s); parenthesize the application",
                  t);
          return Type::con(t.text);
        }
        if (!allow_free_ && !type_var_in_scope(t.text)) error("unbound type variable", t);
        return Type::var(t.text);
      }
      case Tok::Meta:
        if (!allow_free_) error("meta-variables cannot be written in programs", t);
        next();
        return Type::var(t.text);
      case Tok::LParen: {
        next();
        if (peek().kind == Tok::Op && peek(1).kind == Tok::RParen) {
          const Token& op = next();
          check_operator(op);
          next();
          Type a = atom_type();
          Type b = atom_type();
          return Type::con(op.text, {a, b});
        }
        Type inner = type();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        error("expected a type", t);
    }
  }

  Prototype prototype() {
    if (peek().kind == Tok::Question) {
      next();
      if (accept(Tok::Arrow)) return Prototype::arrow_to(prototype());
      return Prototype::unknown();
    }
    return Prototype::exact(type());
  }

  // ---- terms

  bool at_term_atom() const {
    const Token& t = peek();
    return (t.kind == Tok::Ident && !is_keyword(t.text)) || t.kind == Tok::LParen;
  }

  Term term() {
    const Token& start = peek();
    if (start.kind == Tok::Lambda) {
      next();
      std::string name = binder_name("a variable after '\\'");
      std::optional<Type> ann;
      if (accept(Tok::Colon)) ann = type();
      expect(Tok::Dot, "'.' after the lambda binder");
      Term body = term();
      return Term::lam(name, ann, body, join(start.span, body.span()));
    }
    if (start.kind == Tok::TLambda) {
      next();
      const Token& at = peek();
      std::string name = binder_name("a type variable after '/\\'");
      if (ctx_.arity(name)) error("constructor name used as a type variable", at);
      expect(Tok::Dot, "'.' after the type binder");
      scope_.push_back(name);
      Term body = term();
      scope_.pop_back();
      return Term::tlam(name, body, join(start.span, body.span()));
    }
    return application();
  }

  Term application() {
    const Token& start = peek();
    Term f = atom_term();
    while (true) {
      if (peek().kind == Tok::LBrack) {
        next();
        Type arg = type();
        const Token& close = expect(Tok::RBrack, "']'");
        f = Term::tapp(f, arg, join(start.span, close.span));
      } else if (at_term_atom()) {
        Term arg = atom_term();
        f = Term::app(f, arg, join(start.span, last().span));
      } else if (peek().kind == Tok::Lambda || peek().kind == Tok::TLambda) {
        // A trailing binder extends as far as possible.
        Term arg = term();
        f = Term::app(f, arg, join(start.span, arg.span()));
        return f;
      } else {
        return f;
      }
    }
  }

  Term atom_term() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      next();
      return Term::var(t.text, t.span);
    }
    if (t.kind == Tok::LParen) {
      next();
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    error("expected a term", t);
  }

  // ---- statements

  Statement statement() {
    const Token& kw = peek();
    if (kw.kind != Tok::Ident || !is_keyword(kw.text) || kw.text == "forall")
      error("expected 'type', 'assume', 'check' or 'synth'", kw);
    next();
    Statement st{Statement::Kind::Goal, "", 0, std::nullopt, std::nullopt, GoalKind::Synth,
                 ctx_, kw.span, ""};

    if (kw.text == "type") {
      const Token& at = peek();
      std::string name;
      bool op = false;
      if (accept(Tok::LParen)) {
        name = expect(Tok::Op, "an operator").text;
        expect(Tok::RParen, "')'");
        op = true;
      } else {
        name = binder_name("a type name");
      }
      if (ctx_.arity(name) || ctx_.declares_type_var(name))
        error("duplicate declaration of " + name, at);
      if (accept(Tok::Slash)) {
        const Token& num = expect(Tok::Number, "an arity");
        std::size_t arity = 0;
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), arity);
        if (op && arity != 2) error("operator constructors must have arity 2", num);
        st.kind = Statement::Kind::Constructor;
        st.arity = arity;
        ctx_ = ctx_.with_constructor(name, arity);
      } else {
        if (op) error("operator constructors need an arity", peek());
        st.kind = Statement::Kind::TypeVar;
        ctx_ = ctx_.with_type_var(name);
      }
      st.name = name;
      st.ctx = ctx_;
      st.span = join(kw.span, last().span);
      return st;
    }

    if (kw.text == "assume") {
      const Token& at = peek();
      st.name = binder_name("a variable name");
      if (ctx_.binds_term(st.name)) error("duplicate declaration of " + st.name, at);
      expect(Tok::Colon, "':'");
      st.type = type();
      st.kind = Statement::Kind::Assume;
      ctx_ = ctx_.with_term(st.name, *st.type);
      st.ctx = ctx_;
      st.span = join(kw.span, last().span);
      return st;
    }

    st.goal = kw.text == "check" ? GoalKind::Check : GoalKind::Synth;
    const Token& first = peek();
    st.term = term();
    st.text = std::string(src_.substr(first.begin, last().end - first.begin));
    if (st.goal == GoalKind::Check) {
      expect(Tok::Colon, "':' and the expected type");
      st.type = type();
    }
    st.span = join(kw.span, last().span);
    return st;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Context ctx_;
  bool allow_free_;
  std::vector<std::string> scope_;
};

}  // namespace

Program parse_program(std::string_view source, const Context& seed) {
  return Parser(source, seed, false).program();
}

Statement parse_statement(std::string_view source, const Context& ctx) {
  return Parser(source, ctx, false).single_statement();
}

Type parse_type(std::string_view source, const Context& ctx, bool allow_free) {
  return Parser(source, ctx, allow_free).whole_type();
}

Term parse_term(std::string_view source, const Context& ctx, bool allow_free) {
  return Parser(source, ctx, allow_free).whole_term();
}

Prototype parse_prototype(std::string_view source, const Context& ctx, bool allow_free) {
  return Parser(source, ctx, allow_free).whole_prototype();
}

}  // namespace spinel
