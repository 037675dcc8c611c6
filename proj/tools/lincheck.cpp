#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "lincheck/cli/commands.hpp"
#include "lincheck/symbolic/polynomial.hpp"

using lincheck::cli::Command;
using lincheck::cli::CommandOutput;
using lincheck::cli::RunOptions;

namespace {

struct Args {
  std::vector<std::string> files;
  std::string json_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string action = "flat";
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("files", args.files, "input system files")->required()->check(CLI::ExistingFile);
  sub->add_option("--json", args.json_path, "write the JSON report to this path ('-' for standard output)");
  sub->add_option("--tol", args.tol, "numeric residual tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", args.seed, "seed for the initial states");
  sub->add_option("--jobs", args.jobs, "files processed concurrently")->check(CLI::Range(1u, 256u));
}

bool apply_term_cap() {
  const char* env = std::getenv("LINCHECK_TERM_CAP");
  if (!env) return true;
  std::size_t cap = 0;
  const std::string s(env);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc() || p != s.data() + s.size() || cap == 0) {
    std::cerr << "lincheck: LINCHECK_TERM_CAP must be a positive integer, got '" << s << "'\n";
    return false;
  }
  lincheck::sym::set_term_cap(cap);
  return true;
}

std::vector<CommandOutput> run_all(Command cmd, const Args& args, const RunOptions& opts) {
  std::vector<CommandOutput> out(args.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < args.files.size(); i = next++) out[i] = lincheck::cli::run_on_file(cmd, args.files[i], opts);
  };
  const unsigned n = std::min<unsigned>(args.jobs, static_cast<unsigned>(args.files.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int combined_exit(const std::vector<CommandOutput>& outs) {
  int code = 0;
  for (const auto& o : outs) {
    if (o.exit_code == lincheck::cli::kExitInput) return lincheck::cli::kExitInput;
    code = std::max(code, o.exit_code);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearizability checks for geodesic-type and cubic third-order ODE systems"};
  app.set_version_flag("--version", std::string(lincheck::cli::kToolVersion));
  app.require_subcommand(1);

  Args args;
  Command cmd = Command::Check;
  struct Entry {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Entry entries[] = {
      {"check", "decide linearizability of a third- or second-order system", Command::Check},
      {"build", "print the cubic coefficients P..W of a geodesic system", Command::Build},
      {"verify", "check a transformation symbolically and along integrated trajectories", Command::Verify},
      {"tensor", "Christoffel symbols, Riemann tensor or flatness of a metric", Command::Tensor},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, args);
    if (e.cmd == Command::Tensor)
      sub->add_option("--action", args.action, "christoffel, riemann or flat")
          ->check(CLI::IsMember({"christoffel", "riemann", "flat"}));
    sub->callback([&cmd, c = e.cmd] { cmd = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lincheck::cli::kExitInput;
  }
  if (!apply_term_cap()) return lincheck::cli::kExitInput;

  RunOptions opts;
  opts.tol = args.tol;
  opts.seed = args.seed;
  if (args.action == "christoffel") opts.tensor_action = lincheck::cli::TensorAction::Christoffel;
  if (args.action == "riemann") opts.tensor_action = lincheck::cli::TensorAction::Riemann;

  const std::vector<CommandOutput> outs = run_all(cmd, args, opts);

  const bool json_stdout = args.json_path == "-";
  if (!json_stdout)
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (outs.size() > 1) std::cout << "== " << args.files[i] << "\n";
      std::cout << outs[i].text;
    }
  if (!args.json_path.empty()) {
    nlohmann::ordered_json doc;
    if (outs.size() == 1) {
      doc = outs[0].report;
    } else {
      doc["schema"] = lincheck::cli::kSchemaVersion;
      doc["documents"] = nlohmann::ordered_json::array();
      for (const auto& o : outs) doc["documents"].push_back(o.report);
    }
    const std::string dumped = doc.dump(2) + "\n";
    if (json_stdout) {
      std::cout << dumped;
    } else {
      std::ofstream f(args.json_path, std::ios::binary);
      if (!(f << dumped)) {
        std::cerr << "lincheck: cannot write " << args.json_path << "\n";
        return lincheck::cli::kExitInput;
      }
    }
  }
  return combined_exit(outs);
}
