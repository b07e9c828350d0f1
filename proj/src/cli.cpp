#include "latmat/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>
#include <vector>

#include "latmat/bounds.hpp"
#include "latmat/constants.hpp"
#include "latmat/error.hpp"
#include "latmat/incidence.hpp"
#include "latmat/lattice_matrices.hpp"
#include "latmat/poset_io.hpp"
#include "latmat/selftest.hpp"
#include "latmat/spectra.hpp"
#include "latmat/text.hpp"

namespace latmat {

namespace {

struct MatrixArgs {
  std::string poset;
  std::string set;
  std::string func = "N";
  std::string exp = "1,0,0,0";
  std::string format = "csv";
};

struct SearchArgs {
  int n = 0;
  int jobs = 1;
  std::string checkpoint_dir;
  bool i_know = false;

  SearchOptions options() const { return {jobs, checkpoint_dir, i_know}; }
};

// Everything a matrix subcommand needs, with the poset owned here so the views stay valid.
struct Loaded {
  Poset poset;
  std::optional<ElementSubset> subset;
  std::optional<PosetFunction> f;
  Exponents exponents;

  CombinedSpec spec() const { return {*subset, *f, exponents}; }
};

Exponents parse_exponents(const std::string& text) {
  const auto parts = split(text, ",");
  if (parts.size() != 4) throw ValidationError("--exp needs four comma-separated values a,b,g,d; got '" + text + "'");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])};
}

std::unique_ptr<Loaded> load(const MatrixArgs& a) {
  auto l = std::make_unique<Loaded>(Loaded{poset_from_source(a.poset), std::nullopt, std::nullopt, {}});
  if (a.set.empty()) {
    l->subset = ElementSubset::whole(l->poset);
  } else {
    const auto labels = split(a.set, " \t,");
    l->subset = ElementSubset::from_labels(l->poset, labels);
  }
  l->f = function_from_source(a.func, l->poset);
  l->exponents = parse_exponents(a.exp);
  return l;
}

void add_matrix_options(CLI::App* cmd, MatrixArgs& a) {
  cmd->add_option("--poset", a.poset, "divisors:LIST, chain:N or a poset file")->required();
  cmd->add_option("--set", a.set, "members of S as labels (default: every element)");
  cmd->add_option("--func", a.func, "N, const:VALUE or a function file")->capture_default_str();
  cmd->add_option("--exp", a.exp, "exponents a,b,g,d (decimals or p/q)")->capture_default_str();
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "csv or pretty")->check(CLI::IsMember({"csv", "pretty"}))->capture_default_str();
}

void add_search_options(CLI::App* cmd, SearchArgs& a, bool needs_n = true) {
  auto* n = cmd->add_option("--n", a.n, "matrix size");
  if (needs_n) n->required();
  cmd->add_option("--jobs", a.jobs, "worker threads for the search (0: OpenMP default)")->capture_default_str();
  cmd->add_option("--checkpoint-dir", a.checkpoint_dir, "resume/checkpoint directory");
  cmd->add_flag("--i-know", a.i_know, "allow n above the search cap");
}

void write_matrix(std::ostream& out, const DenseMatrix& m, const std::string& format) {
  if (format == "pretty") write_pretty(out, m);
  else write_csv(out, m);
}

ConstantValue lower_choice(const std::string& choice, int n, const SearchOptions& o) {
  if (choice == "exact") return lower_constant(n, ConstantSource::exact_search, o);
  if (choice == "y0") return lower_constant(n, ConstantSource::conjectural_y0, o);
  if (choice == "thm52") return lower_constant(n, ConstantSource::tn_lower_bound, o);
  if (choice == "thm53") return lower_constant(n, ConstantSource::n0_lower_bound, o);
  if (auto v = try_parse_real(choice)) return {*v, ConstantSource::user_value};
  throw ValidationError("--c must be exact, y0, thm52, thm53 or a number; got '" + choice + "'");
}

ConstantValue upper_choice(const std::string& choice, int n, const SearchOptions& o) {
  if (choice == "exact") return upper_constant(n, ConstantSource::exact_search, o);
  if (choice == "tn") return upper_constant(n, ConstantSource::tn_upper_bound, o);
  if (auto v = try_parse_real(choice)) return {*v, ConstantSource::user_value};
  throw ValidationError("--C must be exact, tn or a number; got '" + choice + "'");
}

void write_labels(std::ostream& out, const char* key, const ElementSubset& s) {
  out << key << '=';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s.parent().label(s[i]);
  out << '\n';
}

void write_vector(std::ostream& out, const char* key, std::span<const double> v) {
  out << key << '=';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_real(v[i]);
  out << '\n';
}

int cmd_build(const MatrixArgs& a, std::ostream& out) {
  const auto l = load(a);
  write_matrix(out, combined_matrix(l->spec()), a.format);
  return kExitOk;
}

int cmd_factor(const MatrixArgs& a, const std::string& kind, double tol, std::ostream& out) {
  const auto l = load(a);
  const auto& s = *l->subset;
  const auto& f = *l->f;
  const double alpha = l->exponents.alpha;
  DenseMatrix product, direct;
  out << "kind=" << kind << '\n';
  if (kind == "ideal" || kind == "filter") {
    const auto g = kind == "ideal" ? factor_ideal(s, f, alpha) : factor_filter(s, f, alpha);
    write_labels(out, "support", g.support);
    out << "A:\n";
    write_matrix(out, g.a, a.format);
    product = g.product();
    direct = kind == "ideal" ? meet_matrix(s, f, alpha) : join_matrix(s, f, alpha);
  } else if (kind == "meet-closed" || kind == "join-closed") {
    const auto t = kind == "meet-closed" ? factor_meet_closed(s, f, alpha) : factor_join_closed(s, f, alpha);
    write_vector(out, "d", t.d);
    out << "E:\n";
    write_matrix(out, t.e, a.format);
    product = t.product();
    direct = kind == "meet-closed" ? meet_matrix(s, f, alpha) : join_matrix(s, f, alpha);
  } else {
    const auto sf = kind == "structure-meet" ? structure_meet(l->spec()) : structure_join(l->spec());
    write_vector(out, "left", sf.left);
    write_vector(out, "right", sf.right);
    out << "core:\n";
    write_matrix(out, sf.core, a.format);
    out << "G:\n";
    write_matrix(out, sf.g, a.format);
    product = sf.product();
    direct = combined_matrix(l->spec());
  }
  const double err = relative_error(product, direct);
  out << "reconstruction_error=" << format_real(err) << '\n'
      << "reconstructs=" << (err <= tol ? "true" : "false") << '\n';
  return kExitOk;
}

int cmd_bounds(const MatrixArgs& a, const std::string& side, const std::string& c_choice, const SearchArgs& sa,
               std::ostream& out, std::ostream& err) {
  const auto l = load(a);
  const auto c = lower_choice(c_choice, static_cast<int>(l->subset->size()), sa.options());
  if (side != "both") {
    write_report(out, side == "meet" ? lower_bound_meet(l->spec(), c) : lower_bound_join(l->spec(), c));
    return kExitOk;
  }
  // Both reports when both theorems apply; a side whose hypotheses fail is reported as skipped.
  int produced = 0;
  std::string reasons;
  for (const char* which : {"meet", "join"}) {
    try {
      const auto r = which == std::string("meet") ? lower_bound_meet(l->spec(), c) : lower_bound_join(l->spec(), c);
      if (produced++) out << '\n';
      write_report(out, r);
    } catch (const ValidationError& e) {
      err << which << " side skipped: " << e.what() << '\n';
      reasons += (reasons.empty() ? "" : "; ") + std::string(e.what());
    }
  }
  if (produced == 0) throw HypothesisError(reasons);
  return kExitOk;
}

int cmd_region(const MatrixArgs& a, std::string side, const std::string& c_choice, const SearchArgs& sa,
               std::ostream& out) {
  const auto l = load(a);
  const auto c = upper_choice(c_choice, static_cast<int>(l->subset->size()), sa.options());
  if (side == "auto") side = is_meet_closed(*l->subset) ? "meet" : "join";
  write_report(out, side == "meet" ? region_meet_closed(l->spec(), c) : region_join_closed(l->spec(), c));
  return kExitOk;
}

void write_search(std::ostream& out, const SearchResult& r, const std::string& format) {
  out << "n=" << r.n << '\n'
      << "extremum=" << to_string(r.extremum) << '\n'
      << "value=" << format_real(r.value) << '\n'
      << "witness_bits=" << r.witness.bits << '\n'
      << "matrices_scanned=" << r.matrices_scanned << '\n'
      << "witness:\n";
  write_matrix(out, r.witness.matrix(), format);
}

int cmd_constants(const SearchArgs& sa, std::ostream& out) {
  const auto o = sa.options();
  const int n = sa.n;
  check_search_n(n, sa.i_know);
  out << "n=" << n << '\n'
      << "c_n=" << format_real(search_lower_constant(n, o).value) << '\n'
      << "C_n=" << format_real(search_upper_constant(n, o).value) << '\n'
      << "T_n=" << format_real(t_n(n)) << '\n'
      << "kappa_y0=" << format_real(kappa(n0_matrix(n))) << '\n'
      << "lower_bound_tn=" << format_real(cn_lower_bound_tn(n)) << '\n'
      << "lower_bound_n0=" << format_real(cn_lower_bound_n0(n)) << '\n';
  return kExitOk;
}

int cmd_verify(const SearchArgs& sa, double tol, std::ostream& out) {
  const auto o = sa.options();
  check_search_n(sa.n, sa.i_know);
  bool all = true;
  out << "n,c_n,kappa_y0,difference,holds\n";
  for (int n = 1; n <= sa.n; ++n) {
    const auto r = verify_conjecture(n, o);
    const double diff = std::abs(r.c_n - r.kappa_y0);
    const bool holds = diff <= tol;
    all = all && holds;
    out << n << ',' << format_real(r.c_n) << ',' << format_real(r.kappa_y0) << ',' << format_real(diff, 3) << ','
        << (holds ? "true" : "false") << '\n';
  }
  out << "all_hold=" << (all ? "true" : "false") << '\n';
  return kExitOk;
}

int cmd_table1(const SearchArgs& sa, const std::string& format, std::ostream& out) {
  const auto rows = table1(sa.n, sa.options());
  if (format == "csv") {
    write_table1(out, rows);
    return kExitOk;
  }
  std::ostringstream csv;
  write_table1(csv, rows);
  std::string line;
  std::istringstream in(csv.str());
  while (std::getline(in, line)) {
    const auto cells = split(line, ",");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::size_t width = k == 0 ? 3 : 16;
      out << std::string(width > cells[k].size() ? width - cells[k].size() : 1, ' ') << cells[k];
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meet, join and combined matrices on finite lattices: factorizations, eigenvalue bounds, "
               "and the extremal constants c_n, C_n."};
  app.name("latmat");
  app.require_subcommand(1);

  MatrixArgs m;
  SearchArgs sa;
  std::string kind = "ideal";
  std::string side = "both";
  std::string region_side = "auto";
  std::string c_choice = "exact";
  std::string upper_c_choice = "exact";
  std::string extremum = "min";
  double tol = kConjectureTolerance;
  double factor_tol = 1e-10;
  SelftestOptions st;
  std::string plain_format = "csv";

  auto* build = app.add_subcommand("build", "print the combined matrix");
  add_matrix_options(build, m);
  add_format_option(build, m.format);

  auto* factor = app.add_subcommand("factor", "print a factorization and its reconstruction error");
  add_matrix_options(factor, m);
  add_format_option(factor, m.format);
  factor->add_option("--kind", kind, "ideal, filter, meet-closed, join-closed, structure-meet, structure-join")
      ->check(CLI::IsMember({"ideal", "filter", "meet-closed", "join-closed", "structure-meet", "structure-join"}))
      ->capture_default_str();
  factor->add_option("--tol", factor_tol, "reconstruction tolerance (relative)")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "lower bound for the smallest |eigenvalue|");
  add_matrix_options(bounds, m);
  bounds->add_option("--c", c_choice, "c_n source: exact, y0, thm52, thm53 or a number")->capture_default_str();
  bounds->add_option("--side", side, "meet, join or both")
      ->check(CLI::IsMember({"meet", "join", "both"}))
      ->capture_default_str();
  add_search_options(bounds, sa, false);

  auto* region = app.add_subcommand("region", "disc region containing the eigenvalues");
  add_matrix_options(region, m);
  region->add_option("--C", upper_c_choice, "C_n source: exact, tn or a number")->capture_default_str();
  region->add_option("--side", region_side, "meet, join or auto")
      ->check(CLI::IsMember({"meet", "join", "auto"}))
      ->capture_default_str();
  add_search_options(region, sa, false);

  auto* constants = app.add_subcommand("constants", "c_n, C_n and the closed forms for one n");
  add_search_options(constants, sa);

  auto* search = app.add_subcommand("search", "exhaustive search over K(n)");
  add_search_options(search, sa);
  search->add_option("--extremum", extremum, "min (c_n) or max (C_n)")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
  add_format_option(search, plain_format);

  auto* verify = app.add_subcommand("verify-conjecture", "compare c_m with kappa(Y0 Y0^T) for m = 1..n");
  add_search_options(verify, sa);
  verify->add_option("--tol", tol, "absolute agreement tolerance")->capture_default_str();

  auto* table = app.add_subcommand("table1", "c_n and both lower bounds for n = 1..N");
  add_search_options(table, sa);
  add_format_option(table, plain_format);

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  selftest->add_option("--seed", st.seed, "random seed")->capture_default_str();
  selftest->add_option("--instances", st.instances, "random lattice instances")->capture_default_str();
  selftest->add_option("--n", st.max_n, "largest n for the K(n) checks")->capture_default_str();

  std::vector<const char*> argv{"latmat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*build) return cmd_build(m, out);
    if (*factor) return cmd_factor(m, kind, factor_tol, out);
    if (*bounds) return cmd_bounds(m, side, c_choice, sa, out, err);
    if (*region) return cmd_region(m, region_side, upper_c_choice, sa, out);
    if (*constants) return cmd_constants(sa, out);
    if (*search) {
      const auto r = search_extremum(sa.n, extremum == "min" ? Extremum::min : Extremum::max, sa.options());
      write_search(out, r, plain_format);
      return kExitOk;
    }
    if (*verify) return cmd_verify(sa, tol, out);
    if (*table) return cmd_table1(sa, plain_format, out);
    if (*selftest) return print_results(out, run_selftest(st)) ? kExitOk : kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace latmat
