#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fracvide/expr.hpp"
#include "fracvide/problem.hpp"

namespace fracvide {

namespace {

using expr::Var;

struct KeyInfo {
  std::string_view key;
  bool uses_t;
  Var second;  // s or tau for kernels; t otherwise
};

constexpr std::string_view kScalarKeys[] = {"mu", "gamma", "eps", "T", "y0"};

const KeyInfo kFunctionKeys[] = {
    {"p", true, Var::t},         {"q", true, Var::t},     {"g", true, Var::t},
    {"K1", true, Var::s},        {"K2", true, Var::tau},  {"exact", true, Var::t},
    {"exact_prime", true, Var::t},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

const KeyInfo* function_key(std::string_view key) {
  for (const auto& k : kFunctionKeys) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

bool is_scalar_key(std::string_view key) {
  for (auto k : kScalarKeys) {
    if (k == key) return true;
  }
  return false;
}

struct Entry {
  std::string text;
  int line;
};

}  // namespace

ProblemSpec parse_problem_config(std::string_view text, std::string name) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected 'key = expression'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!is_scalar_key(key) && !function_key(key)) fail(name, line_no, "unknown key '" + key + "'");
    if (value.empty()) fail(name, line_no, "empty value for '" + key + "'");
    if (entries.contains(key)) fail(name, line_no, "duplicate key '" + key + "'");
    entries.emplace(key, Entry{value, line_no});
  }

  auto parse_entry = [&](const std::string& key) -> expr::Expr {
    const Entry& e = entries.at(key);
    try {
      return expr::parse(e.text);
    } catch (const expr::LexError& err) {
      fail(name, e.line, key + ": " + err.what());
    } catch (const expr::ParseError& err) {
      fail(name, e.line, key + ": " + err.what());
    }
  };

  ProblemSpec spec;
  spec.name = name;
  expr::Bindings params;
  double* scalar_slots[] = {&spec.mu, &spec.gamma, &spec.eps, &spec.T, &spec.y0};
  for (std::size_t i = 0; i < std::size(kScalarKeys); ++i) {
    const std::string key(kScalarKeys[i]);
    if (!entries.contains(key)) {
      if (key == "y0") continue;  // defaults to 0
      fail(spec.name, 0, "missing required key '" + key + "'");
    }
    const expr::Expr e = parse_entry(key);
    try {
      *scalar_slots[i] = e.eval(expr::Bindings{});
    } catch (const expr::EvalError& err) {
      fail(spec.name, entries.at(key).line, key + " must be a constant expression: " + err.what());
    }
  }
  params.set(Var::mu, spec.mu)
      .set(Var::gamma, spec.gamma)
      .set(Var::eps, spec.eps)
      .set(Var::T, spec.T);

  auto check_vars = [&](const std::string& key, const expr::Expr& e, const KeyInfo& info) {
    for (Var v : {Var::t, Var::s, Var::tau}) {
      const bool allowed = (v == Var::t && info.uses_t) || v == info.second;
      if (!allowed && e.uses(v)) {
        fail(spec.name, entries.at(key).line,
             key + " may not use variable '" + std::string(expr::var_name(v)) + "'");
      }
    }
  };

  auto unary = [&](const std::string& key) -> Fn1 {
    if (!entries.contains(key)) return {};
    expr::Expr e = parse_entry(key);
    check_vars(key, e, *function_key(key));
    return [e, params](double t) {
      expr::Bindings b = params;
      b.set(Var::t, t);
      return e.eval(b);
    };
  };
  auto binary = [&](const std::string& key, Var second) -> Fn2 {
    if (!entries.contains(key)) return {};
    expr::Expr e = parse_entry(key);
    check_vars(key, e, *function_key(key));
    return [e, params, second](double t, double x) {
      expr::Bindings b = params;
      b.set(Var::t, t).set(second, x);
      return e.eval(b);
    };
  };

  spec.p = unary("p");
  spec.q = unary("q");
  spec.K1 = binary("K1", Var::s);
  spec.K2 = binary("K2", Var::tau);
  spec.exact = unary("exact");
  spec.exact_prime = unary("exact_prime");
  Fn1 given_g = unary("g");
  spec.g = given_g ? given_g : Fn1([](double) { return 0.0; });

  if (auto errors = validate(spec); !errors.empty()) {
    std::string msg = "invalid problem:";
    for (const auto& e : errors) msg += "\n  " + e;
    fail(spec.name, 0, msg);
  }
  if (!given_g && !spec.has_exact()) {
    fail(spec.name, 0, "g is required unless exact and exact_prime are given");
  }
  // With a known solution the forcing is always manufactured; a user g is
  // kept only as a cross-check.
  if (spec.has_exact()) {
    spec.g_reference = given_g;
    spec.g = manufactured_g(spec);
  }
  return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_config(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace fracvide
