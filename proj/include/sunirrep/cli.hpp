#ifndef SUNIRREP_CLI_HPP
#define SUNIRREP_CLI_HPP

// Command-line front end: subcommand parsing into a RunConfig, deterministic
// CSV/JSON emission, and orchestration of the library calls.  Exit codes:
// 0 success, 1 usage or domain error, 2 numerical-convergence failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sunirrep/algebra.hpp"
#include "sunirrep/combinatorics.hpp"
#include "sunirrep/common.hpp"
#include "sunirrep/decompose.hpp"
#include "sunirrep/expander.hpp"
#include "sunirrep/fastforward.hpp"
#include "sunirrep/oscillator.hpp"
#include "sunirrep/pipeline.hpp"

namespace sunirrep::cli {

enum class Command {
  Rank,
  Unrank,
  Irrep,
  Decompose,
  Plan,
  QhoResiduals,
  Simulate,
  Sweep,
  Expander,
  KickedTop,
};

struct RunConfig {
  Command command = Command::Rank;
  bool dry_run = false;
  bool verbose = false;
  int threads = 1;

  int n = 2;
  std::int64_t M = 0;
  std::int64_t ell = -1;
  std::vector<std::int64_t> parts;

  std::string kind;  // irrep generator: E, H, S, A
  int j = 1, k = 2, i = 1;

  std::string input_path;
  std::string output_path = "-";
  std::string angles_path;
  std::uint64_t seed = 0;
  double tol = 1e-10;

  int L = 64;
  std::vector<int> L_list;
  std::vector<int> m_list;
  std::vector<int> mprime_list;
  int power_a = 2, power_b = 0;
  std::string quantity = "eigen";

  std::int64_t p = 5;
  std::vector<std::int64_t> N_list;
  bool emit_unitaries = false;

  double gamma = 1.7, beta = 0.5;
  int steps = 10;

  std::size_t mem_cap = std::size_t(1) << 26;
  std::int64_t dense_cap = kDefaultDenseCap;
};

/// Parse failure that should surface as a usage error (exit 1).
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help / --version request (exit 0), carrying the text to print.
struct help_requested {
  std::string text;
};

inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  if (const char* env = std::getenv("SUNIRREP_THREADS")) {
    try {
      cfg.threads = std::max(1, std::stoi(env));
    } catch (...) {
    }
  }

  CLI::App app{"totally symmetric SU(n) irreps, oscillator fast-forwarding, "
               "and Ramanujan expanders"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--dry-run", cfg.dry_run, "validate and print the plan only");
    sub->add_flag("--verbose", cfg.verbose, "log angle reductions and sizes");
    sub->add_option("--threads", cfg.threads, "worker threads (env SUNIRREP_THREADS)");
    sub->add_option("--out", cfg.output_path, "output file, '-' for stdout");
    sub->add_option("--mem-cap", cfg.mem_cap, "state-vector entry cap");
    sub->add_option("--dense-cap", cfg.dense_cap, "dense matrix dimension cap");
  };

  auto* rank = app.add_subcommand("rank", "rank of a composition");
  rank->add_option("--n", cfg.n)->required();
  rank->add_option("--M", cfg.M)->required();
  rank->add_option("--parts", cfg.parts, "composition m_1,...,m_n")
      ->required()
      ->delimiter(',');
  add_common(rank);

  auto* unrank_cmd = app.add_subcommand("unrank", "composition of a rank");
  unrank_cmd->add_option("--n", cfg.n)->required();
  unrank_cmd->add_option("--M", cfg.M)->required();
  unrank_cmd->add_option("--ell", cfg.ell)->required();
  add_common(unrank_cmd);

  auto* irrep = app.add_subcommand("irrep", "one generator matrix as CSV");
  irrep->add_option("--n", cfg.n)->required();
  irrep->add_option("--M", cfg.M)->required();
  irrep->add_option("--kind", cfg.kind, "E, H, S or A")->required();
  irrep->add_option("--j", cfg.j);
  irrep->add_option("--k", cfg.k);
  irrep->add_option("--i", cfg.i, "Cartan index for kind H");
  add_common(irrep);

  auto* dec = app.add_subcommand("decompose", "Euler factors of an n x n unitary");
  dec->add_option("--in", cfg.input_path, "matrix CSV (row,col,re,im)")->required();
  dec->add_option("--tol", cfg.tol, "reconstruction tolerance");
  add_common(dec);

  auto* plan = app.add_subcommand("plan", "quadratic-monomial plan of a factor CSV");
  plan->add_option("--in", cfg.input_path, "factors CSV (kind,j,k,angle)")->required();
  add_common(plan);

  auto* qho = app.add_subcommand("qho-residuals", "discrete-oscillator residuals");
  qho->add_option("--L-list", cfg.L_list)->required()->delimiter(',');
  qho->add_option("--m-list", cfg.m_list)->required()->delimiter(',');
  qho->add_option("--quantity", cfg.quantity, "eigen | fourier | matelem")
      ->check(CLI::IsMember({"eigen", "fourier", "matelem"}));
  qho->add_option("--mprime-list", cfg.mprime_list, "matelem only; defaults to m-list")
      ->delimiter(',');
  qho->add_option("--a", cfg.power_a, "matelem position power");
  qho->add_option("--b", cfg.power_b, "matelem momentum power");
  add_common(qho);

  auto* sim = app.add_subcommand("simulate", "full pipeline vs exact unitary");
  sim->add_option("--n", cfg.n)->required();
  sim->add_option("--M", cfg.M)->required();
  sim->add_option("--L", cfg.L)->required();
  sim->add_option("--angles-file", cfg.angles_path, "kind j k value per line");
  sim->add_option("--seed", cfg.seed, "random angles when no file is given");
  add_common(sim);

  auto* sweep = app.add_subcommand("sweep", "spectral error over a list of L");
  sweep->add_option("--n", cfg.n)->required();
  sweep->add_option("--M", cfg.M)->required();
  sweep->add_option("--L-list", cfg.L_list)->required()->delimiter(',');
  sweep->add_option("--angles-file", cfg.angles_path);
  sweep->add_option("--seed", cfg.seed);
  add_common(sweep);

  auto* exp = app.add_subcommand("expander", "LPS expander spectral gaps");
  exp->add_option("--p", cfg.p)->required();
  exp->add_option("--N-list", cfg.N_list)->required()->delimiter(',');
  exp->add_flag("--emit-unitaries", cfg.emit_unitaries, "dump the D unitaries");
  exp->add_option("--seed", cfg.seed);
  add_common(exp);

  auto* kt = app.add_subcommand("kicked-top", "Floquet fast-forward demo (n = 2)");
  kt->add_option("--M", cfg.M)->required();
  kt->add_option("--gamma", cfg.gamma);
  kt->add_option("--beta", cfg.beta);
  kt->add_option("--steps", cfg.steps);
  kt->add_option("--L", cfg.L)->required();
  add_common(kt);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    throw help_requested{app.help()};
  } catch (const CLI::CallForVersion&) {
    throw help_requested{std::string(kVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw usage_error(std::string("usage error: ") + e.what());
  }

  const std::map<std::string, Command> names{
      {"rank", Command::Rank},           {"unrank", Command::Unrank},
      {"irrep", Command::Irrep},         {"decompose", Command::Decompose},
      {"plan", Command::Plan},           {"qho-residuals", Command::QhoResiduals},
      {"simulate", Command::Simulate},   {"sweep", Command::Sweep},
      {"expander", Command::Expander},   {"kicked-top", Command::KickedTop}};
  cfg.command = names.at(app.get_subcommands().front()->get_name());
  if (cfg.threads < 1 || cfg.mem_cap == 0 || cfg.dense_cap < 1 || cfg.tol <= 0)
    throw usage_error("usage error: caps, threads and tolerances must be positive");
  return cfg;
}

// ---------------------------------------------------------------------------
// output helpers

namespace detail {

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

inline std::string json_sidecar_path(const std::string& csv_path) {
  if (csv_path == "-") return "-";
  const auto dot = csv_path.find_last_of('.');
  if (dot == std::string::npos) return csv_path + ".json";
  return csv_path.substr(0, dot) + ".json";
}

inline nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["n"] = cfg.n;
  j["M"] = cfg.M;
  j["L"] = cfg.L;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  if (!cfg.angles_path.empty()) j["angles_file"] = cfg.angles_path;
  return j;
}

inline AngleSet load_angles(int n, const std::string& path, bool verbose) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open angles file: " + path);
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<double> sigma(n - 1, 0.0), theta(pairs, 0.0), phi(pairs, 0.0);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    int j, k;
    double value;
    if (!(ls >> kind >> j >> k >> value))
      throw std::domain_error("angles file line " + std::to_string(lineno) +
                              ": expected 'kind j k value'");
    if (kind == "H") {
      if (j < 1 || j > n - 1)
        throw std::domain_error("angles file line " + std::to_string(lineno) +
                                ": H index out of range");
      sigma[j - 1] = value;
    } else if (kind == "S") {
      theta[AngleSet::pair_index(n, j, k)] = value;
    } else if (kind == "A") {
      phi[AngleSet::pair_index(n, j, k)] = value;
    } else {
      throw std::domain_error("angles file line " + std::to_string(lineno) +
                              ": kind must be H, S or A");
    }
  }
  bool reduced = false;
  AngleSet out =
      make_angles(n, std::move(sigma), std::move(theta), std::move(phi), &reduced);
  if (reduced && verbose)
    std::cerr << "note: angles reduced into [0, 4pi)" << std::endl;
  return out;
}

inline AngleSet angles_for(const RunConfig& cfg) {
  if (!cfg.angles_path.empty())
    return load_angles(cfg.n, cfg.angles_path, cfg.verbose);
  return random_angles(cfg.n, cfg.seed);
}

inline Mat load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open matrix file: " + path);
  struct Entry {
    int r, c;
    cplx v;
  };
  std::vector<Entry> entries;
  int dim = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ls, tok, ',')) toks.push_back(tok);
    if (toks.size() != 4)
      throw std::domain_error("matrix CSV: expected 'row,col,re,im' per line");
    const int r = std::stoi(toks[0]), c = std::stoi(toks[1]);
    entries.push_back({r, c, cplx(std::stod(toks[2]), std::stod(toks[3]))});
    dim = std::max(dim, std::max(r, c) + 1);
  }
  Mat out = Mat::Zero(dim, dim);
  for (const auto& e : entries) out(e.r, e.c) = e.v;
  return out;
}

inline std::vector<EulerFactor> load_factors_csv(const std::string& path, int* n_out) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open factors file: " + path);
  std::vector<EulerFactor> factors;
  int n = 2;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ls, tok, ',')) toks.push_back(tok);
    if (toks.size() != 4)
      throw std::domain_error("factors CSV: expected 'kind,j,k,angle' per line");
    const int j = std::stoi(toks[1]), k = std::stoi(toks[2]);
    const double angle = std::stod(toks[3]);
    if (toks[0] == "H")
      factors.push_back({Generator::diagonal(j), angle});
    else if (toks[0] == "S")
      factors.push_back({Generator::symmetric(j, k), angle});
    else if (toks[0] == "A")
      factors.push_back({Generator::antisymmetric(j, k), angle});
    else
      throw std::domain_error("factors CSV: kind must be H, S or A");
    n = std::max({n, j + 1, k});
  }
  *n_out = n;
  return factors;
}

inline void write_sparse_csv(std::ostream& os, const SparseMat& m) {
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMat::InnerIterator it(m, c); it; ++it)
      os << it.row() << ',' << it.col() << ',' << format_double(it.value().real())
         << ',' << format_double(it.value().imag()) << '\n';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// subcommand bodies

namespace detail {

inline int run_rank(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(cfg.n, cfg.M);
  const std::uint64_t r = rank_desc(cfg.parts, shape);
  os << r << '\n';
  return 0;
}

inline int run_unrank(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(cfg.n, cfg.M);
  if (cfg.ell < 0 || static_cast<std::uint64_t>(cfg.ell) >= shape.N)
    throw std::domain_error("unrank: ell out of range [0, " +
                            std::to_string(shape.N) + ")");
  const CompositionIndex c = unrank(shape, static_cast<std::uint64_t>(cfg.ell));
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    os << (i ? "," : "") << c.parts[i];
  os << '\n';
  return 0;
}

inline int run_irrep(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(cfg.n, cfg.M);
  Generator g{};
  if (cfg.kind == "E")
    g = Generator::ladder(cfg.j, cfg.k);
  else if (cfg.kind == "H")
    g = Generator::diagonal(cfg.i);
  else if (cfg.kind == "S")
    g = Generator::symmetric(cfg.j, cfg.k);
  else if (cfg.kind == "A")
    g = Generator::antisymmetric(cfg.j, cfg.k);
  else
    throw std::domain_error("irrep: --kind must be one of E, H, S, A");
  write_sparse_csv(os, build_generator(shape, g).entries);
  return 0;
}

inline int run_decompose(const RunConfig& cfg, std::ostream& os) {
  const Mat u = load_matrix_csv(cfg.input_path);
  const EulerSequence seq = euler_decompose(u, cfg.tol);
  for (const auto& f : seq.factors) {
    const char* kind = f.gen.kind == GeneratorKind::Diagonal      ? "H"
                       : f.gen.kind == GeneratorKind::Symmetric   ? "S"
                                                                  : "A";
    os << kind << ',' << f.gen.j << ',' << f.gen.k << ','
       << format_double(f.angle) << '\n';
  }
  if (cfg.verbose)
    std::cerr << "reconstruction error " << format_double(seq.reconstruction_error)
              << std::endl;
  return 0;
}

inline int run_plan(const RunConfig& cfg, std::ostream& os) {
  int n = 0;
  EulerSequence seq;
  seq.factors = load_factors_csv(cfg.input_path, &n);
  seq.n = n;
  const FactorizationPlan plan = split_phases(plan_from_sequence(seq));
  for (const auto& t : plan.terms)
    os << monomial_name(t.monomial) << ',' << t.j << ',' << t.k << ','
       << format_double(t.angle) << ',' << t.repetition << '\n';
  return 0;
}

inline int run_qho(const RunConfig& cfg, std::ostream& os) {
  const std::vector<int> mprime =
      cfg.mprime_list.empty() ? cfg.m_list : cfg.mprime_list;
  if (cfg.quantity == "matelem" && mprime.size() != cfg.m_list.size())
    throw std::domain_error("qho-residuals: mprime-list length must match m-list");
  for (int L : cfg.L_list) {
    const DiscreteOscillator osc(L);
    for (std::size_t idx = 0; idx < cfg.m_list.size(); ++idx) {
      const int m = cfg.m_list[idx];
      double residual = 0.0;
      int mp = m, a = 0, b = 0;
      if (cfg.quantity == "eigen") {
        residual = osc.eigen_residual(m);
      } else if (cfg.quantity == "fourier") {
        residual = osc.fourier_eigen_residual(m);
      } else {
        mp = mprime[idx];
        a = cfg.power_a;
        b = cfg.power_b;
        residual = osc.matrix_element_residual(m, mp, a, b);
      }
      os << L << ',' << m << ',' << mp << ',' << a << ',' << b << ','
         << format_double(residual) << '\n';
    }
  }
  return 0;
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
  PipelineOptions opts;
  opts.mem_cap = cfg.mem_cap;
  opts.dense_cap = cfg.dense_cap;
  opts.threads = cfg.threads;
  return opts;
}

inline int run_simulate(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(cfg.n, cfg.M);
  const AngleSet angles = angles_for(cfg);
  const PipelineResult r = simulate(shape, angles, cfg.L, pipeline_options(cfg));
  for (std::uint64_t ell = 0; ell < shape.N; ++ell)
    for (std::uint64_t ellp = 0; ellp < shape.N; ++ellp) {
      const cplx v = r.sim_unitary(static_cast<Eigen::Index>(ellp),
                                   static_cast<Eigen::Index>(ell));
      os << ell << ',' << ellp << ',' << format_double(v.real()) << ','
         << format_double(v.imag()) << '\n';
    }
  nlohmann::json summary = config_echo(cfg);
  summary["spectral_error"] = r.spectral_error;
  summary["leakage_max"] = r.leakage_max;
  summary["leakage_flagged"] = r.leakage_flagged;
  summary["plan_stats"] = {{"factor_count", r.plan_stats.factor_count},
                           {"term_count", r.plan_stats.term_count},
                           {"split_term_count", r.plan_stats.split_term_count}};
  const std::string side = json_sidecar_path(cfg.output_path);
  if (side == "-") {
    std::cerr << summary.dump(2) << std::endl;
  } else {
    std::ofstream js(side);
    js << summary.dump(2) << '\n';
  }
  return 0;
}

inline int run_sweep(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(cfg.n, cfg.M);
  const AngleSet angles = angles_for(cfg);
  const ErrorFitResult fit =
      error_sweep(shape, angles, cfg.L_list, pipeline_options(cfg));
  nlohmann::json out = config_echo(cfg);
  out["points"] = nlohmann::json::array();
  for (const auto& [L, err] : fit.points) out["points"].push_back({L, err});
  out["slope"] = fit.slope;
  out["intercept"] = fit.intercept;
  out["fit_residual"] = fit.fit_residual;
  out["floor_limited"] = fit.floor_limited;
  os << out.dump(2) << '\n';
  return 0;
}

inline int run_expander(const RunConfig& cfg, std::ostream& os) {
  for (std::int64_t N : cfg.N_list) {
    const ExpanderSpec spec = make_expander_spec(cfg.p, N);
    const auto kraus = build_channel(spec, cfg.dense_cap);
    SpectralGapOptions opts;
    opts.seed = cfg.seed;
    const ChannelSpectrum cs = spectral_gap(kraus, opts);
    os << N << ',' << format_double(cs.lambda) << ',' << format_double(cs.bound)
       << ',' << format_double(cs.bound - cs.lambda) << '\n';
    if (cfg.emit_unitaries) {
      const std::string base = cfg.output_path == "-"
                                   ? std::string("expander")
                                   : cfg.output_path.substr(0, cfg.output_path.find_last_of('.'));
      std::ofstream uf(base + "_unitaries_N" + std::to_string(N) + ".csv");
      for (std::size_t d = 0; d < kraus.size(); ++d)
        for (Eigen::Index r = 0; r < kraus[d].rows(); ++r)
          for (Eigen::Index c = 0; c < kraus[d].cols(); ++c)
            uf << d << ',' << r << ',' << c << ','
               << format_double(kraus[d](r, c).real()) << ','
               << format_double(kraus[d](r, c).imag()) << '\n';
    }
  }
  return 0;
}

inline int run_kicked_top(const RunConfig& cfg, std::ostream& os) {
  const IrrepShape shape = make_shape(2, cfg.M);
  const auto snaps =
      kicked_top_demo(shape, cfg.gamma, cfg.beta, cfg.steps, cfg.L,
                      pipeline_options(cfg));
  for (std::size_t s = 0; s < snaps.size(); ++s)
    for (Eigen::Index ell = 0; ell < snaps[s].size(); ++ell)
      os << s << ',' << ell << ',' << format_double(snaps[s](ell).real()) << ','
         << format_double(snaps[s](ell).imag()) << '\n';
  return 0;
}

inline void dry_run_validate(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Rank:
      rank_desc(cfg.parts, make_shape(cfg.n, cfg.M));
      break;
    case Command::Unrank: {
      const IrrepShape shape = make_shape(cfg.n, cfg.M);
      if (cfg.ell < 0 || static_cast<std::uint64_t>(cfg.ell) >= shape.N)
        throw std::domain_error("unrank: ell out of range [0, " +
                                std::to_string(shape.N) + ")");
      break;
    }
    case Command::Irrep:
      make_shape(cfg.n, cfg.M);
      if (cfg.kind != "E" && cfg.kind != "H" && cfg.kind != "S" && cfg.kind != "A")
        throw std::domain_error("irrep: --kind must be one of E, H, S, A");
      break;
    case Command::Expander:
      distinct_solutions(cfg.p);
      for (std::int64_t N : cfg.N_list)
        if (N < 2) throw std::domain_error("expander: N must be >= 2");
      break;
    case Command::Simulate:
    case Command::Sweep: {
      make_shape(cfg.n, cfg.M);
      if (!cfg.angles_path.empty()) angles_for(cfg);
      break;
    }
    case Command::KickedTop:
      make_shape(2, cfg.M);
      break;
    default:
      break;
  }
}

}  // namespace detail

/// Execute one parsed configuration.  Returns the process exit code.
inline int run(const RunConfig& cfg) {
  try {
    if (cfg.dry_run) {
      detail::dry_run_validate(cfg);
      std::cout << "dry-run ok: would run ";
      switch (cfg.command) {
        case Command::Rank: std::cout << "rank n=" << cfg.n << " M=" << cfg.M; break;
        case Command::Unrank:
          std::cout << "unrank n=" << cfg.n << " M=" << cfg.M << " ell=" << cfg.ell;
          break;
        case Command::Irrep:
          std::cout << "irrep n=" << cfg.n << " M=" << cfg.M << " kind=" << cfg.kind;
          break;
        case Command::Decompose: std::cout << "decompose " << cfg.input_path; break;
        case Command::Plan: std::cout << "plan " << cfg.input_path; break;
        case Command::QhoResiduals:
          std::cout << "qho-residuals quantity=" << cfg.quantity;
          break;
        case Command::Simulate:
          std::cout << "simulate n=" << cfg.n << " M=" << cfg.M << " L=" << cfg.L;
          break;
        case Command::Sweep: std::cout << "sweep n=" << cfg.n << " M=" << cfg.M; break;
        case Command::Expander: std::cout << "expander p=" << cfg.p; break;
        case Command::KickedTop:
          std::cout << "kicked-top M=" << cfg.M << " steps=" << cfg.steps;
          break;
      }
      std::cout << std::endl;
      return 0;
    }
    detail::Output out(cfg.output_path);
    switch (cfg.command) {
      case Command::Rank: return detail::run_rank(cfg, out.stream());
      case Command::Unrank: return detail::run_unrank(cfg, out.stream());
      case Command::Irrep: return detail::run_irrep(cfg, out.stream());
      case Command::Decompose: return detail::run_decompose(cfg, out.stream());
      case Command::Plan: return detail::run_plan(cfg, out.stream());
      case Command::QhoResiduals: return detail::run_qho(cfg, out.stream());
      case Command::Simulate: return detail::run_simulate(cfg, out.stream());
      case Command::Sweep: return detail::run_sweep(cfg, out.stream());
      case Command::Expander: return detail::run_expander(cfg, out.stream());
      case Command::KickedTop: return detail::run_kicked_top(cfg, out.stream());
    }
    return 1;
  } catch (const convergence_error& e) {
    std::cerr << "convergence failure: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

inline int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig cfg = parse_args(args);
    return run(cfg);
  } catch (const help_requested& h) {
    std::cout << h.text;
    return 0;
  } catch (const usage_error& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  }
}

}  // namespace sunirrep::cli

#endif
