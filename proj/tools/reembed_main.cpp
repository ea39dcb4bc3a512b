#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reembed/job.hpp"
#include "reembed/report.hpp"

namespace {

struct Flags {
  std::string jobfile;
  std::string format;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> threads;
  std::optional<double> wall;
  bool sugar = false;
  std::string ordering;
  std::vector<std::string> z;
  std::string alg;
  std::optional<std::size_t> size;
  bool optimal_only = false;
  bool all = false;
  bool chain = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
std::optional<T> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    return static_cast<T>(std::stoull(v));
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("invalid value for ") + name);
  }
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("jobfile", f.jobfile, "Job file, or - for standard input")->required();
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--budget", f.budget, "Groebner step budget per computation (env REEMBED_BUDGET)");
  sub->add_option("--threads", f.threads, "Worker threads for candidate checks (env REEMBED_THREADS)");
  sub->add_option("--wall", f.wall, "Wall-clock budget in seconds for a search");
  sub->add_flag("--sugar", f.sugar, "Select pairs by sugar degree");
}

// Precedence: command-line flag, then job file, then environment, then default.
void apply(reembed::JobSpec& job, const Flags& f) {
  using namespace reembed;
  if (!f.format.empty()) job.format = f.format == "json" ? OutputFormat::json : OutputFormat::text;
  if (f.budget)
    job.budget = f.budget;
  else if (!job.budget)
    job.budget = env_number<std::uint64_t>("REEMBED_BUDGET");
  if (f.threads)
    job.threads = f.threads;
  else if (!job.threads)
    job.threads = env_number<std::size_t>("REEMBED_THREADS");
  if (f.wall) job.wall_seconds = f.wall;
  if (f.sugar) job.sugar = true;
  if (!f.ordering.empty()) set_ordering(job, f.ordering);
  if (!f.z.empty()) job.z = job.ring.indices_of(f.z);
  if (!f.alg.empty()) job.alg = f.alg == "cotangent" ? SearchAlg::cotangent : SearchAlg::gfan;
  if (f.size) job.size = f.size;
  if (f.optimal_only) job.optimal_only = true;
  if (f.all) job.all = true;
  if (f.chain) job.chain_reembed = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-embeddings of affine algebras via Groebner fans and cotangent classes"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "Run the command named in the job file");
  add_common(run, f);

  auto* gb = app.add_subcommand("gb", "Reduced Groebner basis, optionally a Z-separation check");
  add_common(gb, f);
  gb->add_option("--ordering", f.ordering, "degrevlex, lex, elim(z1,...) or matrix((..),(..))");
  gb->add_option("--separating", f.z, "Check Z-separation for these indeterminates")->delimiter(',');

  auto* gfan = app.add_subcommand("gfan-linear", "Groebner fan of an ideal generated by linear forms");
  add_common(gfan, f);

  auto* cot = app.add_subcommand("cotangent", "Linear part and cotangent equivalence classes");
  add_common(cot, f);

  auto* re = app.add_subcommand("reembed", "Search for Z-separating re-embeddings");
  add_common(re, f);
  re->add_option("--alg", f.alg, "Search algorithm")->check(CLI::IsMember({"gfan", "cotangent"}));
  re->add_option("--size", f.size, "Target size of Z (gfan)");
  re->add_option("--z", f.z, "Check this tuple only")->delimiter(',');
  re->add_flag("--optimal-only", f.optimal_only, "Only tuples of size dim Lin(I) (cotangent)");
  re->add_flag("--all", f.all, "Verify all candidates instead of stopping at the first success");

  auto* bbs = app.add_subcommand("bbs", "Border basis scheme of an order ideal");
  add_common(bbs, f);
  bbs->add_flag("--reembed", f.chain, "Continue with the cotangent re-embedding search");
  bbs->add_flag("--optimal-only", f.optimal_only, "Only optimal tuples in the re-embedding search");

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  std::string source = f.jobfile == "-" ? "<stdin>" : f.jobfile;
  try {
    std::string text = read_input(f.jobfile);
    reembed::JobSpec job;
    try {
      job = reembed::parse_job(text);
    } catch (const reembed::ParseError& e) {
      std::cerr << source << ":" << e.what() << "\n";
      return reembed::exit_error;
    }
    if (chosen != run && chosen->get_name() != reembed::to_string(job.command))
      throw std::runtime_error("job file holds a '" + std::string(reembed::to_string(job.command)) +
                               "' job, not '" + chosen->get_name() + "'");
    apply(job, f);
    auto report = reembed::run_job(job);
    std::cout << report.render(job.format);
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << source << ": error: " << e.what() << "\n";
    return reembed::exit_error;
  }
}
