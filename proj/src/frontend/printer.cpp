#include "aoo/frontend/printer.hpp"

#include <cctype>
#include <sstream>

namespace aoo {

namespace {

std::string constant_text(const Constant& c) {
  switch (c.type.kind) {
    case TypeName::Kind::Boolean: return c.boolean ? "true" : "false";
    case TypeName::Kind::Int: return c.number.str();
    case TypeName::Kind::Char: {
      std::uint32_t cp = c.character;
      if (cp == '\n') return "'\\n'";
      if (cp == '\t') return "'\\t'";
      if (cp == 0) return "'\\0'";
      if (cp == '\\') return "'\\\\'";
      if (cp == '\'') return "'\\''";
      std::string s = "'";
      if (cp < 0x80) {
        s += static_cast<char>(cp);
      } else if (cp < 0x800) {
        s += static_cast<char>(0xC0 | (cp >> 6));
        s += static_cast<char>(0x80 | (cp & 0x3F));
      } else {
        s += static_cast<char>(0xE0 | (cp >> 12));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
      }
      return s + "'";
    }
    default: return "?";
  }
}

std::string operand(const Expr& e) {
  return e.kind == Expr::Kind::Op ? "(" + print(e) + ")" : print(e);
}

std::string arg_list(const std::vector<Expr>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += print(args[i]);
  }
  return s + ")";
}

bool literal_op(const std::string& name) {
  return name.size() > 1 && (name[0] == '+' || name[0] == '-') &&
         std::isdigit(static_cast<unsigned char>(name[1]));
}

void indent_to(std::ostringstream& out, int n) { out << std::string(static_cast<std::size_t>(n) * 2, ' '); }

void print_block_body(std::ostringstream& out, const Block& b, int indent) {
  for (const Instr& i : b) out << print(i, indent);
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Const: return constant_text(e.value);
    case Expr::Kind::Null: return "null";
    case Expr::Kind::This: return "this";
    case Expr::Kind::New: return "new " + e.name + arg_list(e.args);
    case Expr::Kind::Call: return operand(*e.receiver) + "." + e.name + arg_list(e.args);
    case Expr::Kind::Op:
      if (literal_op(e.name) && e.args.size() == 1)
        return operand(e.args[0]) + " " + e.name.substr(0, 1) + " " + e.name.substr(1);
      if (e.name == "!" && e.args.size() == 1) return "!" + operand(e.args[0]);
      if (e.name == "?:" && e.args.size() == 3)
        return operand(e.args[0]) + " ? " + operand(e.args[1]) + " : " + operand(e.args[2]);
      if (e.args.size() == 2) return operand(e.args[0]) + " " + e.name + " " + operand(e.args[1]);
      return e.name + arg_list(e.args);
  }
  return "?";
}

std::string print(const Instr& i, int indent) {
  std::ostringstream out;
  indent_to(out, indent);
  switch (i.kind) {
    case Instr::Kind::Skip: out << ";\n"; break;
    case Instr::Kind::Assign:
      if (i.decl) out << i.decl->str() << " ";
      out << i.target << " := " << print(i.expr) << ";\n";
      break;
    case Instr::Kind::Call: out << print(i.expr) << ";\n"; break;
    case Instr::Kind::Seq:
      out << "{\n";
      print_block_body(out, i.body, indent + 1);
      indent_to(out, indent);
      out << "}\n";
      break;
    case Instr::Kind::While:
      out << "while (" << print(i.expr) << ") {\n";
      print_block_body(out, i.body, indent + 1);
      indent_to(out, indent);
      out << "}\n";
      break;
    case Instr::Kind::If:
      out << "if (" << print(i.expr) << ") {\n";
      print_block_body(out, i.body, indent + 1);
      indent_to(out, indent);
      out << "} else {\n";
      print_block_body(out, i.alt, indent + 1);
      indent_to(out, indent);
      out << "}\n";
      break;
  }
  return out.str();
}

std::string print(const Block& b, int indent) {
  std::ostringstream out;
  print_block_body(out, b, indent);
  return out.str();
}

std::string print(const Program& p) {
  std::ostringstream out;
  auto params = [](const std::vector<Param>& ps) {
    std::string s = "(";
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (k) s += ", ";
      s += ps[k].type.str() + " " + ps[k].name;
    }
    return s + ")";
  };
  for (std::size_t ci = 0; ci < p.classes.size(); ++ci) {
    const ClassDecl& c = p.classes[ci];
    if (ci) out << "\n";
    out << c.name;
    if (c.super) out << " extends " << *c.super;
    out << " {\n";
    for (const FieldDecl& f : c.fields) out << "  " << f.type.str() << " " << f.name << ";\n";
    for (const CtorDecl& k : c.ctors) {
      out << "\n  " << c.name << params(k.params) << " {\n";
      print_block_body(out, k.body, 2);
      out << "  }\n";
    }
    for (const MethodDecl& m : c.methods) {
      out << "\n  " << m.ret.str() << " " << m.name << params(m.params) << " {\n";
      print_block_body(out, m.body, 2);
      if (m.return_var) out << "    return " << *m.return_var << ";\n";
      out << "  }\n";
    }
    if (static_cast<int>(ci) == p.exe_class) {
      out << "\n  void main() {\n";
      for (std::size_t s = 0; s < p.segments.size(); ++s) {
        if (s) out << "    //Comp" << (p.segments.size() > 2 ? std::to_string(s) : "") << "\n";
        print_block_body(out, p.segments[s], 2);
      }
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace aoo
