#include "lincheck/cli/spec_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace lincheck::cli {

using sym::RationalExpr;

namespace {

struct Value {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;  // first character of the value
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Value> entries;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"third_order", {"P", "Q", "R", "S", "T", "U", "V", "W"}},
      {"second_order",
       {"a", "b", "c", "d", "e", "f", "beta11", "beta12", "beta21", "beta22", "alpha1", "alpha2"}},
      {"metric", {}},  // n and g keys, checked separately
      {"transform", {"u", "v"}},
      {"transform.constants", {}},  // any identifier
      {"numeric", {"step", "s_end", "samples", "seed", "tol", "center_x", "center_y"}},
  };
  return keys;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::map<std::string, Section> split_sections(std::string_view text) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = rtrim(line);
    std::size_t i = skip_space(line, 0);
    if (i == line.size()) continue;

    if (line[i] == '[') {
      const std::size_t close = line.find(']', i);
      if (close == std::string_view::npos || skip_space(line, close + 1) != line.size())
        throw InputError(line_no, i + 1, "malformed section header");
      const std::string name(rtrim(line.substr(skip_space(line, i + 1), close - skip_space(line, i + 1))));
      if (!allowed_keys().count(name)) throw InputError(line_no, i + 2, "unknown section [" + name + "]");
      if (sections.count(name)) throw InputError(line_no, i + 1, "duplicate section [" + name + "]");
      current = &sections[name];
      current->line = line_no;
      continue;
    }

    const std::size_t eq = line.find('=', i);
    if (eq == std::string_view::npos) throw InputError(line_no, i + 1, "expected 'key = value'");
    const std::string key(rtrim(line.substr(i, eq - i)));
    if (!is_ident(key)) throw InputError(line_no, i + 1, "invalid key '" + key + "'");
    if (!current) throw InputError(line_no, i + 1, "key '" + key + "' outside any section");

    std::size_t vpos = skip_space(line, eq + 1);
    std::string_view value = line.substr(vpos);
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') throw InputError(line_no, vpos + 1, "unterminated string");
      value = value.substr(1, value.size() - 2);
      ++vpos;
    }
    if (value.empty()) throw InputError(line_no, vpos + 1, "empty value for '" + key + "'");
    if (current->entries.count(key)) throw InputError(line_no, i + 1, "duplicate key '" + key + "'");
    current->entries[key] = {std::string(value), line_no, vpos + 1};
  }
  return sections;
}

class Builder {
 public:
  explicit Builder(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  SystemSpec build() {
    for (const auto& [name, sec] : sections_) check_keys(name, sec);
    const std::vector<std::pair<std::string, SystemKind>> kinds = {{"third_order", SystemKind::ThirdOrder},
                                                                   {"second_order", SystemKind::SecondOrder},
                                                                   {"metric", SystemKind::Metric}};
    int found = 0;
    for (const auto& [name, kind] : kinds)
      if (sections_.count(name)) {
        spec_.kind = kind;
        ++found;
      }
    if (found != 1)
      throw InputError(0, 0, "exactly one of [third_order], [second_order], [metric] is required");

    if (auto* c = find("transform.constants")) read_constants(*c);
    switch (spec_.kind) {
      case SystemKind::ThirdOrder:
        read_third(sections_.at("third_order"));
        break;
      case SystemKind::SecondOrder:
        read_second(sections_.at("second_order"));
        break;
      case SystemKind::Metric:
        read_metric(sections_.at("metric"));
        break;
    }
    if (auto* t = find("transform")) read_transform(*t);
    if (auto* n = find("numeric")) read_numeric(*n);
    return std::move(spec_);
  }

 private:
  Section* find(const std::string& name) {
    auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
  }

  static void check_keys(const std::string& name, const Section& sec) {
    const auto& allowed = allowed_keys().at(name);
    if (allowed.empty()) return;
    for (const auto& [key, v] : sec.entries)
      if (!allowed.count(key)) throw InputError(v.line, v.column, "unknown key '" + key + "' in [" + name + "]");
  }

  std::set<std::string> declared() const {
    std::set<std::string> out;
    for (const auto& [k, v] : spec_.constants) out.insert(k);
    return out;
  }

  /// Maps library parse errors to the position inside the file.
  template <typename F>
  static auto at(const Value& v, F&& f) {
    try {
      return f();
    } catch (const SyntaxError& e) {
      throw InputError(v.line, v.column + e.position(), e.what());
    } catch (const UnknownSymbol& e) {
      throw InputError(v.line, v.column + e.position(), e.what());
    } catch (const Error& e) {
      throw InputError(v.line, v.column, e.what());
    }
  }

  sym::ExprTree tree(const Value& v) const {
    const auto names = declared();
    return at(v, [&] { return sym::parse_expr(v.text, names); });
  }

  RationalExpr rational(const Value& v) const {
    const sym::ExprTree t = tree(v);
    return at(v, [&] { return sym::to_rational(t, spec_.constants); });
  }

  RationalExpr rational_or_zero(const Section& sec, const std::string& key) const {
    auto it = sec.entries.find(key);
    return it == sec.entries.end() ? RationalExpr() : rational(it->second);
  }

  void read_constants(const Section& sec) {
    for (const auto& [name, v] : sec.entries) {
      if (name == "x" || name == "y") throw InputError(v.line, v.column, "constant cannot be named '" + name + "'");
      const RationalExpr r = at(v, [&] { return sym::to_rational(sym::parse_expr(v.text)); });
      if (!r.is_constant()) throw InputError(v.line, v.column, "constant '" + name + "' must be a rational number");
      spec_.constants[name] = r.constant_value();
    }
  }

  void read_third(const Section& sec) {
    auto& A = spec_.third;
    RationalExpr* fields[] = {&A.P, &A.Q, &A.R, &A.S, &A.T, &A.U, &A.V, &A.W};
    const char* names[] = {"P", "Q", "R", "S", "T", "U", "V", "W"};
    for (int i = 0; i < 8; ++i) *fields[i] = rational_or_zero(sec, names[i]);
  }

  void read_second(const Section& sec) {
    auto& g = spec_.second.gamma;
    RationalExpr* fields[] = {&g.a, &g.b, &g.c, &g.d, &g.e, &g.f};
    const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < 6; ++i) *fields[i] = rational_or_zero(sec, names[i]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j)
        spec_.second.beta[i][j] = rational_or_zero(sec, "beta" + std::to_string(i + 1) + std::to_string(j + 1));
      spec_.second.alpha[i] = rational_or_zero(sec, "alpha" + std::to_string(i + 1));
    }
  }

  void read_metric(const Section& sec) {
    auto nit = sec.entries.find("n");
    if (nit == sec.entries.end()) throw InputError(sec.line, 1, "[metric] needs n");
    const std::size_t n = integer(nit->second);
    if (n < 1 || n > 16) throw InputError(nit->second.line, nit->second.column, "n must be between 1 and 16");

    std::map<std::pair<std::size_t, std::size_t>, std::pair<RationalExpr, const Value*>> given;
    for (const auto& [key, v] : sec.entries) {
      if (key == "n") continue;
      std::size_t i = 0, j = 0;
      if (!metric_index(key, i, j) || i < 1 || j < 1 || i > n || j > n)
        throw InputError(v.line, v.column, "unknown key '" + key + "' in [metric]");
      given[{i - 1, j - 1}] = {rational(v), &v};
    }
    sym::Matrix<RationalExpr> m(n, std::vector<RationalExpr>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        auto a = given.find({i, j});
        auto b = given.find({j, i});
        if (a != given.end() && b != given.end() && !(a->second.first == b->second.first))
          throw InputError(b->second.second->line, b->second.second->column, "metric is not symmetric");
        if (a == given.end()) a = b;
        if (a == given.end()) {
          if (i == j) throw InputError(sec.line, 1, "missing diagonal component g" + std::to_string(i + 1) + std::to_string(i + 1));
          continue;
        }
        m[i][j] = m[j][i] = a->second.first;
      }
    try {
      spec_.metric.emplace(m);
    } catch (const Error& e) {
      throw InputError(sec.line, 1, e.what());
    }
  }

  static bool metric_index(const std::string& key, std::size_t& i, std::size_t& j) {
    if (key.size() == 3 && key[0] == 'g' && std::isdigit(static_cast<unsigned char>(key[1])) &&
        std::isdigit(static_cast<unsigned char>(key[2]))) {
      i = static_cast<std::size_t>(key[1] - '0');
      j = static_cast<std::size_t>(key[2] - '0');
      return true;
    }
    if (key.rfind("g_", 0) != 0) return false;
    const std::size_t sep = key.find('_', 2);
    if (sep == std::string::npos) return false;
    const std::string a = key.substr(2, sep - 2), b = key.substr(sep + 1);
    auto num = [](const std::string& s, std::size_t& out) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return ec == std::errc() && p == s.data() + s.size() && !s.empty();
    };
    return num(a, i) && num(b, j);
  }

  void read_transform(const Section& sec) {
    auto u = sec.entries.find("u");
    auto v = sec.entries.find("v");
    if (u == sec.entries.end() || v == sec.entries.end()) throw InputError(sec.line, 1, "[transform] needs u and v");
    spec_.transform = verify::TransformPair{tree(u->second), tree(v->second)};
  }

  static double real(const Value& v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || p != v.text.data() + v.text.size() || !std::isfinite(out))
      throw InputError(v.line, v.column, "expected a number, found '" + v.text + "'");
    return out;
  }

  static std::uint64_t integer(const Value& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec != std::errc() || p != v.text.data() + v.text.size())
      throw InputError(v.line, v.column, "expected a non-negative integer, found '" + v.text + "'");
    return out;
  }

  void read_numeric(const Section& sec) {
    auto& n = spec_.numeric;
    for (const auto& [key, v] : sec.entries) {
      if (key == "samples") {
        n.samples = integer(v);
      } else if (key == "seed") {
        n.seed = integer(v);
      } else {
        const double d = real(v);
        if ((key == "step" || key == "tol") && !(d > 0))
          throw InputError(v.line, v.column, key + " must be positive");
        if (key == "step") n.step = d;
        if (key == "s_end") n.s_end = d;
        if (key == "tol") n.tol = d;
        if (key == "center_x") n.center_x = d;
        if (key == "center_y") n.center_y = d;
      }
    }
  }

  std::map<std::string, Section> sections_;
  SystemSpec spec_;
};

}  // namespace

InputError::InputError(std::size_t line, std::size_t column, const std::string& message)
    : Error(line == 0 ? message : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::ThirdOrder:
      return "third_order";
    case SystemKind::SecondOrder:
      return "second_order";
    case SystemKind::Metric:
      return "metric";
  }
  return "?";
}

SystemSpec parse_system_spec(std::string_view text) { return Builder(split_sections(text)).build(); }

SystemSpec load_system_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(0, 0, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system_spec(ss.str());
}

}  // namespace lincheck::cli
