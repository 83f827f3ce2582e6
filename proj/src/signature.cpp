#include "bbalg/signature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace bbalg {

namespace {

bool is_gamma_name(std::string_view name)
{
  return name == "+" || name == "-" || name == "0" || name == "−";
}

} // namespace

void validate_signature(std::span<const OperationSymbol> omega)
{
  std::set<std::string_view> seen;
  for (const auto& sym : omega) {
    if (sym.name.empty())
      throw Error(Errc::DuplicateSymbol, "empty symbol name");
    if (is_gamma_name(sym.name))
      throw Error(Errc::GammaCollision, "'" + sym.name + "' is a group symbol");
    if (!seen.insert(sym.name).second)
      throw Error(Errc::DuplicateSymbol, "'" + sym.name + "' declared twice");
  }
}

const OperationSymbol& Signature::add_symbol()
{
  static const OperationSymbol s{"+", 2};
  return s;
}

const OperationSymbol& Signature::neg_symbol()
{
  static const OperationSymbol s{"-", 1};
  return s;
}

const OperationSymbol& Signature::zero_symbol()
{
  static const OperationSymbol s{"0", 0};
  return s;
}

Signature::Signature(std::vector<OperationSymbol> omega)
{
  validate_signature(omega);
  symbols_.reserve(omega.size() + gamma_size);
  symbols_.push_back(add_symbol());
  symbols_.push_back(neg_symbol());
  symbols_.push_back(zero_symbol());
  for (auto& s : omega)
    symbols_.push_back(std::move(s));
}

std::optional<SymbolId> Signature::find(std::string_view name) const
{
  for (SymbolId i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name)
      return i;
  return std::nullopt;
}

SymbolId Signature::resolve(const OperationSymbol& sym) const
{
  auto id = find(sym.name);
  if (!id)
    throw Error(Errc::SignatureMismatch, "symbol '" + sym.name + "' not in signature");
  if (symbols_[*id].arity != sym.arity)
    throw Error(Errc::SignatureMismatch,
                "symbol '" + sym.name + "' has arity " + std::to_string(symbols_[*id].arity) +
                    ", term uses " + std::to_string(sym.arity));
  return *id;
}

Term Term::variable(std::size_t index)
{
  if (index == 0)
    throw Error(Errc::UnboundVariable, "variables are indexed from 1");
  auto node = std::make_shared<Node>();
  node->variable = index;
  return Term(std::move(node));
}

Term Term::apply(OperationSymbol sym, std::vector<Term> children)
{
  if (children.size() != sym.arity)
    throw Error(Errc::ArityMismatch, "'" + sym.name + "' expects " + std::to_string(sym.arity) +
                                         " arguments, got " + std::to_string(children.size()));
  auto node = std::make_shared<Node>();
  node->symbol = std::move(sym);
  node->children = std::move(children);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b)
{
  if (a.node_ == b.node_)
    return true;
  if (a.node_->variable != b.node_->variable || a.node_->symbol != b.node_->symbol)
    return false;
  return std::equal(a.children().begin(), a.children().end(), b.children().begin(),
                    b.children().end());
}

Term var(std::size_t index) { return Term::variable(index); }
Term zero_term() { return Term::apply(Signature::zero_symbol(), {}); }
Term operator+(const Term& a, const Term& b) { return Term::apply(Signature::add_symbol(), {a, b}); }
Term operator-(const Term& a) { return Term::apply(Signature::neg_symbol(), {a}); }
Term operator-(const Term& a, const Term& b) { return a + (-b); }
Term op(const OperationSymbol& sym, std::vector<Term> children)
{
  return Term::apply(sym, std::move(children));
}

Term sum(std::span<const Term> terms)
{
  if (terms.empty())
    return zero_term();
  Term acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = acc + terms[i];
  return acc;
}

namespace {

void collect_variables(const Term& t, std::set<std::size_t>& out)
{
  if (t.is_variable()) {
    out.insert(t.variable_index());
    return;
  }
  for (const auto& c : t.children())
    collect_variables(c, out);
}

} // namespace

std::set<std::size_t> term_variables(const Term& t)
{
  std::set<std::size_t> out;
  collect_variables(t, out);
  return out;
}

std::size_t max_variable(const Term& t)
{
  auto vars = term_variables(t);
  return vars.empty() ? 0 : *vars.rbegin();
}

Identity::Identity(Term l, Term r)
    : lhs(std::move(l)), rhs(std::move(r)), var_count(std::max(max_variable(lhs), max_variable(rhs)))
{
}

Identity::Identity(Term l, Term r, std::size_t m) : lhs(std::move(l)), rhs(std::move(r)), var_count(m)
{
  const std::size_t needed = std::max(max_variable(lhs), max_variable(rhs));
  if (needed > m)
    throw Error(Errc::UnboundVariable, "identity uses x" + std::to_string(needed) +
                                           " but quantifies only " + std::to_string(m) + " variables");
}

namespace {

void compile(const Term& t, const Signature& sig, std::vector<TermProgram::Instr>& code,
             std::size_t depth, std::size_t& max_depth, std::size_t& max_var)
{
  if (t.is_variable()) {
    code.push_back({true, t.variable_index(), 0});
    max_var = std::max(max_var, t.variable_index());
    max_depth = std::max(max_depth, depth + 1);
    return;
  }
  const SymbolId id = sig.resolve(t.symbol());
  std::size_t d = depth;
  for (const auto& c : t.children())
    compile(c, sig, code, d++, max_depth, max_var);
  max_depth = std::max(max_depth, depth + 1);
  code.push_back({false, id, t.symbol().arity});
}

} // namespace

TermProgram::TermProgram(const Term& t, const Signature& sig)
{
  compile(t, sig, code_, 0, max_stack_, max_var_);
}

namespace {

class SexprParser {
public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Term parse_all()
  {
    Term t = parse();
    skip_space();
    if (pos_ != text_.size())
      fail("trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& why) const
  {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" +
                                      std::string(text_) + "\"");
  }

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view atom()
  {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected atom");
    return text_.substr(start, pos_ - start);
  }

  Term leaf(std::string_view a)
  {
    if (a == "zero")
      return zero_term();
    if (a.size() >= 2 && a[0] == 'x') {
      std::size_t index = 0;
      auto [p, ec] = std::from_chars(a.data() + 1, a.data() + a.size(), index);
      if (ec == std::errc() && p == a.data() + a.size() && index > 0)
        return var(index);
    }
    fail("unknown atom '" + std::string(a) + "'");
  }

  Term parse()
  {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    if (text_[pos_] != '(')
      return leaf(atom());
    ++pos_;
    const std::string_view head = atom();
    std::string name;
    if (head == "+")
      name = "+";
    else if (head == "neg")
      name = "-";
    else if (head == "op")
      name = std::string(atom());
    else
      fail("unknown head '" + std::string(head) + "'");

    std::vector<Term> args;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size())
        fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(parse());
    }
    if (name == "+" && args.size() != 2)
      fail("'+' takes two arguments");
    if (name == "-" && args.size() != 1)
      fail("'neg' takes one argument");
    const std::size_t arity = args.size();
    return Term::apply(OperationSymbol{std::move(name), arity}, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Term& t, std::string& out)
{
  if (t.is_variable()) {
    out += "x" + std::to_string(t.variable_index());
    return;
  }
  const auto& s = t.symbol();
  if (s == Signature::zero_symbol()) {
    out += "zero";
    return;
  }
  if (s == Signature::add_symbol())
    out += "(+";
  else if (s == Signature::neg_symbol())
    out += "(neg";
  else
    out += "(op " + s.name;
  for (const auto& c : t.children()) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

} // namespace

Term parse_term(std::string_view text) { return SexprParser(text).parse_all(); }

std::string to_string(const Term& t)
{
  std::string out;
  print(t, out);
  return out;
}

} // namespace bbalg
