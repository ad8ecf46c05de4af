// modinv analyze <instance.json> | modinv survey --p P --n N ...
// Exit codes: 0 consistent, 2 counterexample, 1 usage or resource error.

#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "modinv/checks.hpp"
#include "modinv/error.hpp"
#include "modinv/harness.hpp"
#include "modinv/io.hpp"

using namespace modinv;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_vars(const std::string& s, std::size_t n) {
  std::vector<std::size_t> vars;
  for (auto v : split(s, ',')) {
    if (v.size() < 2 || v[0] != 'x') throw UsageError("variables are written x1, x2, ...: " + v);
    const std::size_t i = std::stoul(v.substr(1));
    if (i == 0 || i > n) throw UsageError("no variable " + v);
    vars.push_back(i - 1);
  }
  return vars;
}

// Rows separated by ';', integer entries by ','.
Matrix parse_rows(const std::string& s, const FieldPtr& k, std::size_t n) {
  const auto rows = split(s, ';');
  Matrix m(k, rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto entries = split(rows[r], ',');
    if (entries.size() != n) throw UsageError("--relative row needs " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = k->from_int(std::stoll(entries[c]));
  }
  return m;
}

std::string row_string(const Matrix& m, std::size_t r) {
  std::string s = "(";
  for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + m.field()->format(m.at(r, c));
  return s + ")";
}

void print_basis(std::ostream& os, const std::string& title, const std::vector<Polynomial>& gens) {
  os << title << ":";
  if (gens.empty()) os << " (0)";
  os << "\n";
  for (const auto& g : gens) os << "  " << g.to_string() << "\n";
}

void print_report(std::ostream& os, const Report& r) {
  os << "check " << r.theorem << ": ";
  if (!r.applicable) {
    os << "not applicable" << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
    return;
  }
  os << (r.counterexample() ? "COUNTEREXAMPLE" : "consistent") << "\n";
  for (const auto& it : r.items) {
    os << "  " << (!it.applicable ? "skip" : it.ok ? "ok  " : "FAIL") << " " << it.name;
    if (!it.detail.empty()) os << " [" << it.detail << "]";
    os << "\n";
  }
}

struct AnalyzeFlags {
  std::string path;
  std::uint32_t bound = 0;
  std::size_t cap_group = 0;
  std::size_t cap_pairs = 0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string inertia;
  bool series = false;
  std::string relative;
};

int analyze(const AnalyzeFlags& f) {
  Instance inst = load_instance(f.path, f.cap_group);
  if (f.bound) inst.options.degree_bound = f.bound;
  if (f.cap_pairs) inst.options.gb.max_pair_reductions = f.cap_pairs;
  const MatrixGroup& g = inst.group;

  SuiteOptions so;
  so.invariants = inst.options;
  so.seed = f.seed;
  const LedgerRecord rec = analyze_group(g, so);
  if (!rec.error.empty()) throw ResourceError("analyze", rec.error);

  if (f.format == "record") {
    std::cout << rec.to_json() << "\n";
    return rec.counterexample ? 2 : 0;
  }

  std::ostream& os = std::cout;
  const Field& k = *g.field();
  const std::size_t n = g.dim();
  os << "instance: " << f.path << "\n";
  os << "field: F_" << (k.degree() == 1 ? std::to_string(k.characteristic())
                                          : std::to_string(k.characteristic()) + "^" + std::to_string(k.degree()))
     << "  n: " << n << "  hash: " << rec.hash << "\n";
  os << "order: " << g.order() << (g.is_trivial() ? " (trivial group)" : "") << "\n";

  const Matrix basis = triangularize(g);
  const MatrixGroup tg = change_basis(g, basis);
  std::map<std::size_t, std::size_t> beta_count;
  for (const auto& t : transvections(tg)) ++beta_count[beta(t)];
  os << "transvections: " << transvections(g).size()
     << (is_transvection_generated(g) ? " (generate G)" : " (do not generate G)") << "\n";
  os << "beta table (triangular coordinates):";
  if (beta_count.empty()) os << " none";
  for (const auto& [b, c] : beta_count) os << " beta=" << b << ":" << c;
  os << "\n";
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    const Matrix& m = g.generators()[i];
    const std::string name = i < g.labels().size() ? g.labels()[i] : "g" + std::to_string(i + 1);
    os << "  " << name << ": " << m.to_string() << (is_transvection(m) ? " transvection" : "") << "\n";
  }

  const FixedSpaces fs = fixed_spaces(g);
  os << "rank V^G: " << rec.rank_vg << "\n";
  for (std::size_t r = 0; r < fs.vectors.rows(); ++r) os << "  " << row_string(fs.vectors, r) << "\n";

  if (f.series) {
    if (is_transvection_generated(g)) {
      const CompositionSeries cs = composition_series(tg);
      os << "composition series (triangular coordinates):\n";
      for (std::size_t l = 0; l < cs.witnesses.size(); ++l)
        os << "  |G_" << l + 1 << "| = " << cs.chain[l + 1].order() << "  witness beta = " << beta(cs.witnesses[l])
           << "  " << cs.witnesses[l].to_string() << "\n";
    } else {
      os << "composition series: not generated by transvections\n";
    }
  }

  if (!f.inertia.empty()) {
    const auto vars = parse_vars(f.inertia, n);
    const MatrixGroup in = inertia_subgroup(g, vars);
    os << "inertia subgroup of (" << f.inertia << "): order " << in.order() << "\n";
    std::size_t witnesses = 0;
    for (std::size_t i = 0; i < in.elements().size(); ++i) {
      const Matrix& m = in.elements()[i];
      if (m.is_identity()) continue;
      const auto at = g.index_of(m);
      const bool tv = is_transvection(m);
      if (!tv) ++witnesses;
      os << "  " << (at ? g.word(*at) : std::string("?")) << ": " << m.to_string()
         << (tv ? " transvection" : " not a pseudoreflection") << "\n";
    }
    os << "  non-pseudoreflection witnesses: " << witnesses << "\n";
  }

  InvariantRing r(g, inst.options);
  const GeneratorSet& gs = r.generators();
  print_basis(os, "invariant generators (" + std::string(gs.certified ? "certified: " + gs.certificate
                                                                      : "searched to degree " +
                                                                            std::to_string(gs.searched_to)) + ")",
              gs.gens);
  os << "polynomial: " << to_string(rec.polynomial) << "\n";
  os << "complete intersection: "
     << (rec.complete_intersection ? (*rec.complete_intersection ? "yes" : "no") : "unknown") << "\n";
  os << "direct summand: " << to_string(rec.direct_summand) << "\n";
  if (gs.certified) {
    print_basis(os, "hilbert ideal", r.hilbert_ideal().gb());
    const Matrix w = f.relative.empty() ? fs.vectors : parse_rows(f.relative, g.field(), n);
    print_basis(os, f.relative.empty() ? "hilbert ideal relative to V^G" : "hilbert ideal relative to W",
                r.relative_hilbert_ideal(w).gb());
  }
  for (const auto& rep : rec.reports) print_report(os, rep);
  os << "counterexample: " << (rec.counterexample ? "yes" : "no") << "\n";
  return rec.counterexample ? 2 : 0;
}

struct SurveyFlags {
  SurveyParams params;
  std::string ledger = "ledger.jsonl";
  std::uint32_t bound = 0;
  std::size_t cap_pairs = 0;
  unsigned workers = 1;
  std::string format = "text";
};

int survey(SurveyFlags f) {
  const Enumeration e = enumerate_transvection_groups(f.params);
  SuiteOptions so;
  so.invariants.degree_bound = f.bound;
  if (f.cap_pairs) so.invariants.gb.max_pair_reductions = f.cap_pairs;
  so.seed = f.params.seed;
  so.workers = f.workers;
  SuiteResult res = run_suite(e.groups, so, {});
  res.summary.duplicates = e.duplicates;
  res.summary.over_cap = e.over_cap;
  res.summary.truncated = e.truncated;
  append_ledger(f.ledger, res);
  if (f.format == "record")
    std::cout << res.summary.to_json() << "\n";
  else
    std::cout << "ledger: " << f.ledger << "\n" << res.summary.to_text();
  return res.summary.counterexamples ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular invariants of transvection groups"};
  app.require_subcommand(1);

  AnalyzeFlags af;
  auto* an = app.add_subcommand("analyze", "Analyze one instance file");
  an->add_option("instance", af.path, "Instance JSON file")->required();
  an->add_option("--bound", af.bound, "Largest invariant degree searched (0: automatic)");
  an->add_option("--cap-group", af.cap_group, "Largest group order accepted");
  an->add_option("--cap-pairs", af.cap_pairs, "S-pair reductions per Groebner basis");
  an->add_option("--seed", af.seed, "Seed for sampled checks");
  an->add_option("--format", af.format, "text or record")->check(CLI::IsMember({"text", "record"}));
  an->add_option("--inertia", af.inertia, "Inertia subgroup of the ideal of these variables, e.g. x1,x2");
  an->add_flag("--series", af.series, "Print the composition series");
  an->add_option("--relative", af.relative, "Basis of W for the relative Hilbert ideal, e.g. '0,0,1;0,1,0'");

  SurveyFlags sf;
  auto* sv = app.add_subcommand("survey", "Survey transvection groups of U_n(F_p)");
  sv->add_option("--p", sf.params.p, "Characteristic")->required();
  sv->add_option("--n", sf.params.n, "Dimension")->required();
  sv->add_flag("--exhaustive", sf.params.exhaustive, "Enumerate all generating sets");
  sv->add_option("--samples", sf.params.samples, "Number of sampled groups");
  sv->add_option("--max-generators", sf.params.max_generators, "Transvections per generating set");
  sv->add_option("--budget", sf.params.budget, "Generating sets examined at most");
  sv->add_option("--min-fixed-rank", sf.params.min_fixed_rank, "Keep groups with rank V^G at least this");
  sv->add_option("--order", sf.params.order, "Keep groups of this order");
  sv->add_option("--seed", sf.params.seed, "Seed for sampling");
  sv->add_option("--bound", sf.bound, "Largest invariant degree searched (0: automatic)");
  sv->add_option("--cap-group", sf.params.group_cap, "Largest group order accepted");
  sv->add_option("--cap-pairs", sf.cap_pairs, "S-pair reductions per Groebner basis");
  sv->add_option("--workers", sf.workers, "Worker threads");
  sv->add_option("--ledger", sf.ledger, "JSON Lines ledger to append to");
  sv->add_option("--format", sf.format, "text or record")->check(CLI::IsMember({"text", "record"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    if (*an) return analyze(af);
    return survey(sf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
