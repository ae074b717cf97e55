#include "nilharm/expr.hpp"

#include <cctype>
#include <map>
#include <memory>

namespace nilharm {

namespace {

struct Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  cd value = 0;
  int var = -1;
  std::string fn;
  std::shared_ptr<Node> a, b;

  cd eval(const Eigen::VectorXd& x) const {
    switch (kind) {
      case Num: return value;
      case Var: return x[var];
      case Neg: return -a->eval(x);
      case Add: return a->eval(x) + b->eval(x);
      case Sub: return a->eval(x) - b->eval(x);
      case Mul: return a->eval(x) * b->eval(x);
      case Div: return a->eval(x) / b->eval(x);
      case Pow: {
        cd base = a->eval(x), e = b->eval(x);
        // integer powers by repeated multiplication, so negative bases stay real
        if (e.imag() == 0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64) {
          cd r = 1;
          for (int k = 0; k < std::abs(int(e.real())); ++k) r *= base;
          return e.real() < 0 ? 1.0 / r : r;
        }
        return std::pow(base, e);
      }
      case Call: {
        cd v = a->eval(x);
        if (fn == "exp") return std::exp(v);
        if (fn == "sin") return std::sin(v);
        if (fn == "cos") return std::cos(v);
        if (fn == "sqrt") return std::sqrt(v);
        if (fn == "abs") return std::abs(v);
        if (fn == "conj") return std::conj(v);
        if (fn == "re") return v.real();
        if (fn == "im") return v.imag();
        return std::log(v);
      }
    }
    return 0;
  }
};

using P = std::shared_ptr<Node>;

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s) {
    for (size_t i = 0; i < vars.size(); ++i) vars_[vars[i]] = int(i);
  }

  P parse() {
    P e = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  std::map<std::string, int> vars_;

  [[noreturn]] void error(const std::string& m) {
    fail(ErrorCode::ConfigError, "expression '" + s_ + "' at " + std::to_string(pos_) + ": " + m);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static P make(Node::Kind k, P a = nullptr, P b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  P sum() {
    P e = product();
    for (;;) {
      if (eat('+'))
        e = make(Node::Add, e, product());
      else if (eat('-'))
        e = make(Node::Sub, e, product());
      else
        return e;
    }
  }
  P product() {
    P e = unary();
    for (;;) {
      if (eat('*'))
        e = make(Node::Mul, e, unary());
      else if (eat('/'))
        e = make(Node::Div, e, unary());
      else
        return e;
    }
  }
  P unary() {
    if (eat('-')) return make(Node::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  P power() {
    P e = atom();
    if (eat('^')) return make(Node::Pow, e, unary());
    return e;
  }
  P atom() {
    skip();
    if (eat('(')) {
      P e = sum();
      if (!eat(')')) error("missing ')'");
      return e;
    }
    if (pos_ >= s_.size()) error("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      auto n = make(Node::Num);
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (auto it = vars_.find(id); it != vars_.end()) {
        auto n = make(Node::Var);
        n->var = it->second;
        return n;
      }
      if (id == "pi" || id == "i") {
        auto n = make(Node::Num);
        n->value = id == "pi" ? cd(kPi) : cd(0, 1);
        return n;
      }
      static const char* fns[] = {"exp", "sin", "cos", "sqrt", "abs", "conj", "re", "im", "log"};
      for (const char* f : fns)
        if (id == f) {
          if (!eat('(')) error("expected '(' after " + id);
          auto n = make(Node::Call, sum());
          n->fn = id;
          if (!eat(')')) error("missing ')'");
          return n;
        }
      error("unknown identifier '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

PointFunction compile_expression(const std::string& text, const std::vector<std::string>& variables) {
  P root = Parser(text, variables).parse();
  return [root](const Eigen::VectorXd& x) { return root->eval(x); };
}

}  // namespace nilharm
