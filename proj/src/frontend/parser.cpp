#include "aoo/frontend/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aoo/frontend/lexer.hpp"
#include "aoo/support/error.hpp"

namespace aoo {

namespace {

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file, int first_site)
      : toks_(std::move(toks)), file_(std::move(file)), site_(first_site) {}

  Program program() {
    Program p;
    p.file = file_;
    std::set<std::string> names;
    while (!at_end()) {
      ClassDecl c = class_decl(p);
      if (!names.insert(c.name).second)
        fail(c.loc, "E-DUPCLASS", "duplicate class '" + c.name + "'");
      p.classes.push_back(std::move(c));
    }
    if (p.exe_class < 0)
      fail(cur().loc, "E-NOMAIN", "no executable class with a `void main()` method");
    p.next_site = site_;
    return p;
  }

  Block block_only() {
    Block b;
    while (!at_end()) {
      if (cur().kind == Tok::Marker) {
        ++pos_;
        continue;
      }
      b.push_back(instr());
    }
    return b;
  }

  int next_site() const { return site_; }

 private:
  // ---- token helpers ----
  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() {
    skip_markers();
    return cur().kind == Tok::End;
  }
  void skip_markers() {
    while (cur().kind == Tok::Marker) ++pos_;
  }
  bool is(std::string_view text) const {
    return (cur().kind == Tok::Punct || cur().kind == Tok::Keyword) && cur().text == text;
  }
  bool accept(std::string_view text) {
    skip_markers();
    if (is(text)) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect(std::string_view text) {
    skip_markers();
    if (!is(text)) unexpected("'" + std::string(text) + "'");
    return toks_[pos_++];
  }
  std::string ident(const char* what) {
    skip_markers();
    if (cur().kind != Tok::Ident) unexpected(what);
    return toks_[pos_++].text;
  }
  [[noreturn]] void unexpected(const std::string& wanted) {
    std::string got = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    fail(cur().loc, "E-SYNTAX", "expected " + wanted + " but found " + got);
  }
  [[noreturn]] void fail(Location loc, const std::string& code, const std::string& msg) {
    throw SourceError({file_, loc.line, loc.col, code, msg});
  }

  bool at_type_keyword() const {
    return cur().kind == Tok::Keyword &&
           (cur().text == "void" || cur().text == "int" || cur().text == "boolean" ||
            cur().text == "char");
  }

  TypeName type_name() {
    skip_markers();
    if (at_type_keyword()) {
      std::string t = toks_[pos_++].text;
      if (t == "void") return TypeName::void_type();
      if (t == "int") return TypeName::integer();
      if (t == "boolean") return TypeName::boolean();
      return TypeName::character();
    }
    return TypeName::of_class(ident("a type"));
  }

  // ---- declarations ----
  ClassDecl class_decl(Program& p) {
    skip_markers();
    if (is("class")) ++pos_;
    ClassDecl c;
    c.loc = cur().loc;
    c.name = ident("a class name");
    if (accept("extends")) c.super = ident("a superclass name");
    expect("{");
    while (!accept("}")) {
      skip_markers();
      if (cur().kind == Tok::End) unexpected("'}'");
      member(p, c);
    }
    return c;
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    expect("(");
    if (accept(")")) return ps;
    do {
      Param prm;
      prm.loc = cur().loc;
      prm.type = type_name();
      prm.name = ident("a parameter name");
      ps.push_back(std::move(prm));
    } while (accept(","));
    expect(")");
    return ps;
  }

  void member(Program& p, ClassDecl& c) {
    Location loc = cur().loc;
    if (cur().kind == Tok::Ident && cur().text == c.name && look(1).text == "(") {
      ++pos_;
      CtorDecl k;
      k.owner = c.name;
      k.loc = loc;
      k.params = params();
      expect("{");
      while (!accept("}")) k.body.push_back(instr());
      c.ctors.push_back(std::move(k));
      return;
    }
    TypeName t = type_name();
    std::string name = ident("a member name");
    if (accept(";")) {
      c.fields.push_back({t, name, loc});
      return;
    }
    MethodDecl m;
    m.name = name;
    m.owner = c.name;
    m.ret = t;
    m.loc = loc;
    m.params = params();
    if (m.name == "main" && m.params.empty() && t.is_void()) {
      if (p.exe_class >= 0) fail(loc, "E-NOMAIN", "more than one `void main()` method");
      p.exe_class = static_cast<int>(p.classes.size());
      p.main_loc = loc;
      p.segments = main_body();
      return;
    }
    expect("{");
    while (true) {
      skip_markers();
      if (is("}")) break;
      if (is("return")) {
        m.return_loc = cur().loc;
        ++pos_;
        m.return_var = ident("a return variable");
        expect(";");
        skip_markers();
        if (!is("}")) fail(cur().loc, "E-SYNTAX", "`return` must end the method body");
        break;
      }
      m.body.push_back(instr());
    }
    expect("}");
    c.methods.push_back(std::move(m));
  }

  std::vector<Block> main_body() {
    std::vector<Block> segs(1);
    expect("{");
    while (true) {
      if (cur().kind == Tok::Marker) {
        ++pos_;
        segs.emplace_back();
        continue;
      }
      if (is("}")) break;
      if (cur().kind == Tok::End) unexpected("'}'");
      segs.back().push_back(instr());
    }
    Location close = cur().loc;
    ++pos_;
    if (segs.size() < 2) fail(close, "E-MARKER", "main body has no `//Comp` marker");
    return segs;
  }

  // ---- instructions ----
  Block braced() {
    Block b;
    expect("{");
    while (!accept("}")) {
      skip_markers();
      if (cur().kind == Tok::End) unexpected("'}'");
      b.push_back(instr());
    }
    return b;
  }

  bool at_assign_op(std::size_t k) const {
    const Token& t = look(k);
    return t.kind == Tok::Punct && (t.text == ":=" || t.text == "=");
  }

  Instr instr() {
    skip_markers();
    Location loc = cur().loc;
    if (accept(";")) return Instr::skip(loc);
    if (is("{")) return Instr::seq(braced(), loc);
    if (accept("while")) {
      expect("(");
      Expr g = expr();
      expect(")");
      return Instr::loop(std::move(g), braced(), loc);
    }
    if (accept("if")) {
      expect("(");
      Expr g = expr();
      expect(")");
      Block t = braced();
      Block e;
      if (accept("else")) {
        e = braced();
      } else {
        e.push_back(Instr::skip(loc));
      }
      return Instr::branch(std::move(g), std::move(t), std::move(e), loc);
    }
    if (at_type_keyword() ||
        (cur().kind == Tok::Ident && look(1).kind == Tok::Ident && at_assign_op(2))) {
      TypeName t = type_name();
      std::string x = ident("a variable name");
      if (!at_assign_op(0)) unexpected("':='");
      ++pos_;
      Expr e = expr();
      expect(";");
      return Instr::assign(t, std::move(x), std::move(e), loc);
    }
    if (cur().kind == Tok::Ident && at_assign_op(1)) {
      std::string x = toks_[pos_].text;
      pos_ += 2;
      Expr e = expr();
      expect(";");
      return Instr::assign(std::nullopt, std::move(x), std::move(e), loc);
    }
    Expr e = expr();
    expect(";");
    if (e.kind != Expr::Kind::Call)
      fail(loc, "E-SYNTAX", "only method calls may be used as statements");
    return Instr::call(std::move(e), loc);
  }

  // ---- expressions ----
  std::vector<Expr> args() {
    std::vector<Expr> a;
    expect("(");
    if (accept(")")) return a;
    do a.push_back(expr());
    while (accept(","));
    expect(")");
    return a;
  }

  Expr expr() {
    Expr c = disj();
    if (is("?")) {
      Location loc = cur().loc;
      ++pos_;
      Expr a = expr();
      expect(":");
      Expr b = expr();
      std::vector<Expr> xs;
      xs.push_back(std::move(c));
      xs.push_back(std::move(a));
      xs.push_back(std::move(b));
      return Expr::op("?:", std::move(xs), loc);
    }
    return c;
  }

  Expr binary(Expr lhs, const std::string& op, Expr rhs, Location loc) {
    std::vector<Expr> xs;
    xs.push_back(std::move(lhs));
    xs.push_back(std::move(rhs));
    return Expr::op(op, std::move(xs), loc);
  }

  template <typename Next>
  Expr left_assoc(std::initializer_list<std::string_view> ops, Next next) {
    Expr lhs = (this->*next)();
    while (true) {
      std::string op;
      for (auto o : ops)
        if (cur().kind == Tok::Punct && cur().text == o) op = std::string(o);
      if (op.empty()) return lhs;
      Location loc = cur().loc;
      ++pos_;
      lhs = binary(std::move(lhs), op, (this->*next)(), loc);
    }
  }

  Expr disj() { return left_assoc({"||"}, &Parser::conj); }
  Expr conj() { return left_assoc({"&&"}, &Parser::equality); }
  Expr equality() { return left_assoc({"==", "!="}, &Parser::relation); }
  Expr relation() { return left_assoc({"<", "<=", ">", ">="}, &Parser::additive); }

  // `e + k` and `e - k` with a literal k become the unary operators `+k`, `-k`.
  Expr additive() {
    Expr lhs = product();
    while (cur().kind == Tok::Punct && (cur().text == "+" || cur().text == "-")) {
      std::string op = cur().text;
      Location loc = cur().loc;
      ++pos_;
      Expr rhs = product();
      if (rhs.kind == Expr::Kind::Const && rhs.value.type.kind == TypeName::Kind::Int) {
        std::vector<Expr> xs;
        xs.push_back(std::move(lhs));
        lhs = Expr::op(op + rhs.value.number.str(), std::move(xs), loc);
      } else {
        lhs = binary(std::move(lhs), op, std::move(rhs), loc);
      }
    }
    return lhs;
  }

  Expr product() { return left_assoc({"*"}, &Parser::unary); }

  Expr unary() {
    if (is("!")) {
      Location loc = cur().loc;
      ++pos_;
      std::vector<Expr> xs;
      xs.push_back(unary());
      return Expr::op("!", std::move(xs), loc);
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (is(".")) {
      Location loc = cur().loc;
      ++pos_;
      std::string m = ident("a method name");
      Expr call = Expr::call(std::move(e), std::move(m), args(), loc);
      call.site = site_++;
      e = std::move(call);
    }
    return e;
  }

  Expr primary() {
    skip_markers();
    const Token& t = cur();
    Location loc = t.loc;
    switch (t.kind) {
      case Tok::Ident: ++pos_; return Expr::var(t.text, loc);
      case Tok::Int: ++pos_; return Expr::constant(Constant::of_int(Nat(t.text)), loc);
      case Tok::Char:
        ++pos_;
        return Expr::constant(Constant::of_char(static_cast<std::uint32_t>(std::stoul(t.text))), loc);
      default: break;
    }
    if (accept("true")) return Expr::constant(Constant::of_bool(true), loc);
    if (accept("false")) return Expr::constant(Constant::of_bool(false), loc);
    if (accept("null")) return Expr::null(loc);
    if (accept("this")) return Expr::this_ref(loc);
    if (accept("new")) {
      std::string c = ident("a class name");
      Expr e = Expr::make_new(std::move(c), args(), loc);
      e.site = site_++;
      return e;
    }
    if (accept("(")) {
      Expr e = expr();
      expect(")");
      return e;
    }
    unexpected("an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  int site_ = 0;
};

}  // namespace

Program parse(std::string_view source, const std::string& file) {
  Parser p(lex(source, file), file, 0);
  return p.program();
}

Block parse_block(std::string_view source, int first_site) {
  Parser p(lex(source, "<block>"), "<block>", first_site);
  return p.block_only();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aoo
