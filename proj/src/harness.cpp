#include "modinv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "modinv/error.hpp"
#include "modinv/io.hpp"

namespace modinv {

namespace {

using nlohmann::json;

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Digits of `index` in base q, least significant first.
std::vector<Elem> digits(std::size_t index, std::size_t q, std::size_t len) {
  std::vector<Elem> d(len);
  for (auto& x : d) {
    x = static_cast<Elem>(index % q);
    index /= q;
  }
  return d;
}

// Accepts or rejects a candidate generating set; shared by both modes.
struct Collector {
  const SurveyParams& params;
  FieldPtr k;
  Enumeration out;
  std::set<std::vector<Matrix>> seen;

  void offer(std::vector<Matrix> gens) {
    ++out.candidates;
    try {
      MatrixGroup g = MatrixGroup::generate(k, params.n, std::move(gens), params.group_cap);
      if (!seen.insert(g.elements()).second) {
        ++out.duplicates;
        return;
      }
      if ((params.order && g.order() != params.order) || fixed_rank(g) < params.min_fixed_rank) {
        ++out.filtered;
        return;
      }
      out.groups.push_back(std::move(g));
    } catch (const ResourceError&) {
      ++out.over_cap;
    }
  }
};

void combinations(std::size_t m, std::size_t r, std::size_t start, std::vector<std::size_t>& cur,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit, bool& stop) {
  if (stop) return;
  if (cur.size() == r) {
    stop = !visit(cur);
    return;
  }
  for (std::size_t i = start; i < m && !stop; ++i) {
    cur.push_back(i);
    combinations(m, r, i + 1, cur, visit, stop);
    cur.pop_back();
  }
}

json report_json(const Report& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back({{"name", it.name}, {"applicable", it.applicable}, {"ok", it.ok}, {"detail", it.detail}});
  json o{{"theorem", r.theorem}, {"applicable", r.applicable}, {"items", items}};
  if (!r.note.empty()) o["note"] = r.note;
  return o;
}

std::string summary_path(const std::string& ledger) {
  std::filesystem::path p(ledger);
  return (p.parent_path() / (p.stem().string() + ".summary.json")).string();
}

}  // namespace

std::vector<Matrix> unipotent_transvections(const FieldPtr& k, std::size_t n) {
  const std::size_t q = ipow(k->characteristic(), k->degree());
  std::vector<Matrix> out;
  // w has its last nonzero entry 1 at index a, l is supported after a
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t wi = 0; wi < ipow(q, a); ++wi) {
      std::vector<Elem> w = digits(wi, q, a);
      w.push_back(1);
      const std::size_t tail = n - 1 - a;
      for (std::size_t li = 1; li < ipow(q, tail); ++li) {
        const std::vector<Elem> l = digits(li, q, tail);
        Matrix m = Matrix::identity(k, n);
        for (std::size_t j = 0; j <= a; ++j)
          for (std::size_t i = 0; i < tail; ++i) m.at(j, a + 1 + i) = k->mul(w[j], l[i]);
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

Enumeration enumerate_transvection_groups(const SurveyParams& params) {
  const FieldPtr k = Field::prime(params.p);
  Collector c{params, k, {}, {}};
  if (params.budget == 0 || params.n < 2) {
    c.out.truncated = params.budget == 0;
    return std::move(c.out);
  }
  // p^{n(n-1)/2} bounds the list of transvections; refuse to list past the budget
  const std::size_t cells = params.n * (params.n - 1) / 2;
  if (std::pow(static_cast<double>(params.p), static_cast<double>(cells)) > static_cast<double>(params.budget)) {
    c.out.truncated = true;
    return std::move(c.out);
  }
  const std::vector<Matrix> ts = unipotent_transvections(k, params.n);

  if (params.exhaustive) {
    bool stop = false;
    for (std::size_t r = 1; r <= params.max_generators && !stop; ++r) {
      std::vector<std::size_t> cur;
      combinations(ts.size(), r, 0, cur, [&](const std::vector<std::size_t>& idx) {
        if (c.out.candidates >= params.budget) {
          c.out.truncated = true;
          return false;
        }
        std::vector<Matrix> gens;
        for (auto i : idx) gens.push_back(ts[i]);
        c.offer(std::move(gens));
        return true;
      }, stop);
    }
    return std::move(c.out);
  }

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, params.max_generators));
  std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
  while (c.out.groups.size() < params.samples) {
    if (c.out.candidates >= params.budget) {
      c.out.truncated = true;
      break;
    }
    std::vector<Matrix> gens;
    for (std::size_t i = count(rng); i > 0; --i) gens.push_back(ts[pick(rng)]);
    c.offer(std::move(gens));
  }
  return std::move(c.out);
}

Report verify_transvection_conjugation(const MatrixGroup& g, std::size_t pairs, std::uint64_t seed) {
  Report rep;
  rep.theorem = "transvection-conjugation";
  const MatrixGroup tg = change_basis(g, triangularize(g));
  const std::vector<Matrix> ts = transvections(tg);
  if (ts.empty()) {
    rep.applicable = false;
    rep.note = "no transvections";
    return rep;
  }
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  if (ts.size() * ts.size() <= pairs) {
    for (std::size_t a = 0; a < ts.size(); ++a)
      for (std::size_t b = 0; b < ts.size(); ++b) chosen.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
    for (std::size_t i = 0; i < pairs; ++i) chosen.emplace_back(pick(rng), pick(rng));
  }
  std::size_t conj_bad = 0, comm_bad = 0, same_beta = 0;
  for (const auto& [a, b] : chosen) {
    const Matrix& x = ts[a];
    const Matrix& h = ts[b];
    const Matrix c = x * h * inverse(x);
    if (!is_transvection(c) || beta(c) != beta(h)) ++conj_bad;
    if (beta(x) == beta(h)) {
      ++same_beta;
      if (!(x * h == h * x)) ++comm_bad;
    }
  }
  rep.add("conjugate-is-transvection-same-beta", conj_bad == 0,
          "pairs=" + std::to_string(chosen.size()) + " failures=" + std::to_string(conj_bad));
  rep.add("equal-beta-commute", comm_bad == 0,
          "pairs=" + std::to_string(same_beta) + " failures=" + std::to_string(comm_bad));
  return rep;
}

const Report* LedgerRecord::report(const std::string& theorem) const {
  for (const auto& r : reports)
    if (r.theorem == theorem) return &r;
  return nullptr;
}

std::string LedgerRecord::to_json() const {
  json o{{"hash", hash},
         {"instance", json::parse(instance)},
         {"p", p},
         {"k", k},
         {"n", n},
         {"order", order},
         {"rank_VG", rank_vg},
         {"beta_G", beta},
         {"polynomial", to_string(polynomial)},
         {"direct_summand", to_string(direct_summand)},
         {"degrees", degrees},
         {"counterexample", counterexample},
         {"cost", {{"kernel_rows", cost.kernel_rows}, {"gb_pairs", cost.gb_pairs}}}};
  o["complete_intersection"] = complete_intersection ? json(*complete_intersection) : json(nullptr);
  json reps = json::array();
  for (const auto& r : reports) reps.push_back(report_json(r));
  o["reports"] = reps;
  o["error"] = error.empty() ? json(nullptr) : json(error);
  return o.dump();
}

LedgerRecord analyze_group(const MatrixGroup& g, const SuiteOptions& opts) {
  LedgerRecord rec;
  rec.hash = instance_hash(g);
  rec.instance = instance_to_json(g);
  rec.p = g.field()->characteristic();
  rec.k = g.field()->degree();
  rec.n = g.dim();
  rec.order = g.order();
  rec.rank_vg = fixed_rank(g);
  rec.beta = beta_group(change_basis(g, triangularize(g)));
  const std::size_t q = rec.p;
  try {
    InvariantRing r(g, opts.invariants);
    const Verdict pv = is_polynomial_ring(r);
    rec.polynomial = pv.status;
    rec.cost = pv.cost;
    rec.degrees = r.generators().degrees();
    if (r.generators().certified) rec.complete_intersection = is_complete_intersection(r.hilbert_ideal());
    rec.direct_summand = direct_summand_status(r).status;
    rec.reports.push_back(verify_singloc_equivalence(r, opts.singular));
    rec.reports.push_back(verify_large_fixed_rank(r));
    rec.reports.push_back(
        verify_transvection_conjugation(g, opts.conjugation_pairs, opts.seed ^ fnv1a64(rec.hash)));
    if (rec.k == 1 && rec.n == 4) rec.reports.push_back(verify_rank4_step(g, opts.invariants));
    if (rec.order == q * q) rec.reports.push_back(verify_order_p2(g, opts.invariants));
    if (rec.order == q * q * q) rec.reports.push_back(verify_order_p3(g, opts.invariants));
    rec.cost.kernel_rows = r.kernel_rows();
  } catch (const ResourceError& e) {
    rec.error = e.what();
  }
  for (const auto& r : rec.reports) rec.counterexample = rec.counterexample || r.counterexample();
  return rec;
}

void Summary::add(const LedgerRecord& r) {
  ++instances;
  if (!r.error.empty()) ++errors;
  switch (r.polynomial) {
    case Status::Yes: ++polynomial; break;
    case Status::No: ++non_polynomial; break;
    case Status::Unknown: ++polynomial_unknown; break;
  }
  if (r.complete_intersection.value_or(false)) ++complete_intersection;
  switch (r.direct_summand) {
    case Status::Yes: ++ds_yes; break;
    case Status::No: ++ds_no; break;
    case Status::Unknown: ++ds_unknown; break;
  }
  if (r.counterexample) ++counterexamples;
}

std::string Summary::to_json() const {
  json o{{"instances", instances},
         {"polynomial", polynomial},
         {"non_polynomial", non_polynomial},
         {"polynomial_unknown", polynomial_unknown},
         {"complete_intersection", complete_intersection},
         {"direct_summand", {{"yes", ds_yes}, {"no", ds_no}, {"unknown", ds_unknown}}},
         {"counterexamples", counterexamples},
         {"errors", errors},
         {"duplicates_skipped", duplicates},
         {"over_cap", over_cap},
         {"truncated", truncated}};
  return o.dump(2);
}

std::string Summary::to_text() const {
  std::ostringstream os;
  os << "instances: " << instances << "\n"
     << "polynomial: " << polynomial << " (no " << non_polynomial << ", unknown " << polynomial_unknown << ")\n"
     << "complete intersection: " << complete_intersection << "\n"
     << "direct summand: yes " << ds_yes << ", no " << ds_no << ", unknown " << ds_unknown << "\n"
     << "counterexamples: " << counterexamples << "\n"
     << "resource errors: " << errors << "\n"
     << "duplicates skipped: " << duplicates << ", over group cap: " << over_cap << "\n";
  if (truncated) os << "note: enumeration truncated by the budget\n";
  return os.str();
}

SuiteResult run_suite(const std::vector<MatrixGroup>& groups, const SuiteOptions& opts, const std::string& ledger) {
  SuiteResult res;
  res.records.resize(groups.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(groups.size())));

  auto work = [&](unsigned w) {
    std::ofstream shard;
    if (!ledger.empty() && workers > 1) shard.open(ledger + ".shard" + std::to_string(w), std::ios::app);
    for (std::size_t i = w; i < groups.size(); i += workers) {
      res.records[i] = analyze_group(groups[i], opts);
      if (shard) shard << res.records[i].to_json() << "\n" << std::flush;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::sort(res.records.begin(), res.records.end(),
            [](const LedgerRecord& a, const LedgerRecord& b) { return a.hash < b.hash; });
  for (const auto& r : res.records) res.summary.add(r);
  if (!ledger.empty()) {
    append_ledger(ledger, res);
    for (unsigned w = 0; w < workers && workers > 1; ++w) std::filesystem::remove(ledger + ".shard" + std::to_string(w));
  }
  return res;
}

std::size_t append_ledger(const std::string& path, const SuiteResult& result) {
  std::set<std::string> present;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        present.insert(json::parse(line).at("hash").get<std::string>());
      } catch (const json::exception&) {
        throw ValidationError("ledger " + path + " has a malformed line");
      }
    }
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::app);
  if (!out) throw UsageError("cannot write " + path);
  std::size_t appended = 0;
  for (const auto& r : result.records) {
    if (!present.insert(r.hash).second) continue;
    out << r.to_json() << "\n";
    ++appended;
  }
  std::ofstream(summary_path(path)) << result.summary.to_json() << "\n";
  return appended;
}

}  // namespace modinv
