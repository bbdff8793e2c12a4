#include "knotpi/cli.hpp"

#include "knotpi/conf_homology.hpp"
#include "knotpi/cosimplicial_identities.hpp"
#include "knotpi/drinfeld_kohno.hpp"
#include "knotpi/knot_pipeline.hpp"
#include "knotpi/parallel.hpp"
#include "knotpi/quillen.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>

namespace knotpi {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"chi",         "e1", "e2", "pi-table", "verify-phi", "verify-cosimplicial",
                                            "collapse-check", "homology-e2"};

bool needs_knot_d(const std::string& cmd) {
  return cmd == "e1" || cmd == "e2" || cmd == "pi-table" || cmd == "homology-e2" || cmd == "collapse-check";
}

void usage_if(bool bad, const std::string& message) {
  if (bad) throw UsageError(message);
}

void guard_if(bool big, const std::string& message) {
  if (big) throw ResourceGuard(message);
}

const std::vector<std::string> kPageConventions = {
    "s = -p is the cosimplicial column; pages are indexed (p, q) with p <= 0",
    "m = q - s is the total degree",
    "stable = the entry cannot change if more columns are added",
};

Column col(std::string name, ColumnType t = ColumnType::Integer) { return {std::move(name), t}; }

long long ll(std::size_t v) { return static_cast<long long>(v); }

// -- cache helpers

template <class T>
T cached(const ComponentCache* cache, const CacheKey& key, const std::function<T()>& compute,
         const std::function<json(const T&)>& save, const std::function<T(const json&)>& load) {
  if (cache)
    if (auto hit = cache->load(key)) {
      try {
        return load(*hit);
      } catch (const std::exception&) {
        // checksum was fine but the layout is not ours; recompute over it
      }
    }
  T value = compute();
  if (cache) cache->store(key, save(value));
  return value;
}

SpectralSequencePage cached_page(const ComponentCache* cache, const CacheKey& key,
                                 const std::function<SpectralSequencePage()>& compute) {
  return cached<SpectralSequencePage>(cache, key, compute, page_to_json, page_from_json);
}

// -- commands

Report chi_report(const Invocation& inv, const ComponentCache* cache) {
  Report r;
  r.parameters = {{"n", inv.n}, {"d", inv.d}, {"weight", inv.weight}};
  const auto labels = cached<std::vector<std::string>>(
      cache, {"chi", inv.n, inv.d, inv.weight}, [&] { return chi_algebra(inv.n, inv.d).labels(inv.weight).labels(); },
      [](const auto& v) { return json(v); }, [](const json& j) { return j.get<std::vector<std::string>>(); });
  r.summary = {{"dimension", ll(labels.size())}, {"degree", inv.weight * (inv.d - 2)}};
  r.conventions = {"basis: Lyndon bracketings in the generators of one row B_i1..B_i,i-1, rows in order"};
  ReportTable t{"basis", {col("index"), col("label", ColumnType::Text)}, {}};
  for (std::size_t k = 0; k < labels.size(); ++k) t.add({ll(k), labels[k]});
  r.tables.push_back(std::move(t));
  return r;
}

Report e1_report(const Invocation& inv) {
  Report r;
  r.parameters = {{"d", inv.d}, {"p_max", inv.p_max}, {"weight_max", inv.weight_max}};
  r.conventions = kPageConventions;
  const auto e1 = homotopy_e1(inv.d, inv.p_max, inv.weight_max);
  ReportTable entries{"entries", {col("s"), col("p"), col("q"), col("weight"), col("dim")}, {}};
  ReportTable diffs{"differentials", {col("s"), col("weight"), col("row"), col("col"), col("value", ColumnType::Rational)}, {}};
  std::size_t total = 0;
  for (const auto& [w, b] : e1.weights) {
    const int q = e1.q_of(w);
    for (int s = 0; s <= inv.p_max; ++s) {
      const auto dim = b.columns[s].dimension(q);
      if (dim == 0) continue;
      total += dim;
      entries.add({s, -s, q, w, ll(dim)});
      if (inv.matrices && s < inv.p_max) {
        const auto m = b.horizontal_at(s, q);
        for (std::size_t c = 0; c < m.cols(); ++c)
          for (const auto& [row, v] : m.column(c).entries()) diffs.add({s, w, ll(row), ll(c), v});
      }
    }
  }
  r.summary = {{"total_dimension", ll(total)}};
  r.tables.push_back(std::move(entries));
  if (inv.matrices) r.tables.push_back(std::move(diffs));
  return r;
}

ReportTable page_table(const SpectralSequencePage& page, const std::function<int(int q)>& weight_of) {
  std::vector<Column> cols = {col("s"), col("p"), col("q")};
  if (weight_of) cols.push_back(col("weight"));
  for (auto c : {col("m"), col("dim"), col("stable", ColumnType::Boolean)}) cols.push_back(c);
  ReportTable t{"entries", cols, {}};
  // by column s, then q
  std::vector<std::pair<int, int>> keys;
  for (const auto& [pq, e] : page.entries)
    if (e.dimension > 0) keys.emplace_back(-pq.first, pq.second);
  std::sort(keys.begin(), keys.end());
  for (const auto& [s, q] : keys) {
    const int p = -s;
    const auto& e = page.entries.at({p, q});
    std::vector<Cell> row = {-p, p, q};
    if (weight_of) row.push_back(weight_of(q));
    row.push_back(q + p);
    row.push_back(ll(e.dimension));
    row.push_back(e.stable);
    t.add(std::move(row));
  }
  return t;
}

std::vector<Field> page_summary(const SpectralSequencePage& page) {
  std::size_t stable = 0, unstable = 0;
  for (const auto& [pq, e] : page.entries) {
    if (e.dimension == 0) continue;
    (e.stable ? stable : unstable) += 1;
  }
  return {{"page", page.r}, {"stable_entries", ll(stable)}, {"unstable_entries", ll(unstable)}};
}

Report e2_report(const Invocation& inv, const ComponentCache* cache) {
  Report r;
  r.parameters = {{"d", inv.d}, {"p_max", inv.p_max}, {"weight_max", inv.weight_max}};
  r.conventions = kPageConventions;
  auto parts = parallel_map(static_cast<std::size_t>(inv.weight_max), [&](std::size_t k) {
    const int w = static_cast<int>(k) + 1;
    return cached_page(cache, {"homotopy-e2", inv.p_max, inv.d, w}, [&] {
      return bkss_pages(homotopy_weight_bicomplex(inv.d, w, inv.p_max), 2).at(1);
    });
  });
  SpectralSequencePage page{2, inv.p_max, {}, {}};
  for (const auto& part : parts)
    for (const auto& [pq, e] : part.entries) page.entries[pq] = e;
  r.summary = page_summary(page);
  const int d = inv.d;
  r.tables.push_back(page_table(page, [d](int q) { return (q - 1) / (d - 2); }));
  return r;
}

Report pi_table_report(const Invocation& inv, const ComponentCache* cache) {
  Report r;
  r.parameters = {{"d", inv.d}, {"m_max", inv.m_max}};
  r.conventions = {"dim = sum of stable E2 dimensions with q - s = m; the sequence collapses at E2 for d >= 4",
                   "complete = every contributing entry is stable and its weight passed the support-bound check",
                   "each weight w is computed with columns s <= w + 2"};
  PiTableLimits limits;
  limits.max_weight = inv.max_weight;
  limits.certify_dimension_limit = inv.certify_limit;
  const int top = pi_table_top_weight(inv.d, inv.m_max, limits);
  const std::string module = "pi-weight-c" + std::to_string(inv.certify_limit);
  auto components = parallel_map(static_cast<std::size_t>(top), [&](std::size_t k) {
    const int w = static_cast<int>(k) + 1;
    return cached<PiWeightComponent>(
        cache, {module, w + 2, inv.d, w}, [&] { return pi_weight_component(inv.d, w, limits); },
        [](const PiWeightComponent& c) {
          return json{{"weight", c.weight}, {"truncation", c.truncation}, {"certified", c.certified}, {"e2", page_to_json(c.e2)}};
        },
        [](const json& j) {
          return PiWeightComponent{j.at("weight").get<int>(), j.at("truncation").get<int>(), page_from_json(j.at("e2")),
                                   j.at("certified").get<bool>()};
        });
  });
  const auto table = assemble_pi_table(inv.d, inv.m_max, components);
  ReportTable rows{"rows", {col("m"), col("dim"), col("complete", ColumnType::Boolean)}, {}};
  ReportTable contributions{"contributions", {col("m"), col("s"), col("q"), col("weight"), col("dim")}, {}};
  bool complete = true;
  for (const auto& row : table.rows) {
    rows.add({row.m, ll(row.dimension), row.complete});
    complete = complete && row.complete;
    for (const auto& c : row.contributions) contributions.add({row.m, -c.p, c.q, c.weight, ll(c.dimension)});
  }
  ReportTable weights{"weights", {col("weight"), col("truncation"), col("certified", ColumnType::Boolean)}, {}};
  for (const auto& [w, n] : table.truncation) weights.add({w, n, table.certified.at(w)});
  r.summary = {{"complete", complete}};
  r.tables = {std::move(rows), std::move(contributions), std::move(weights)};
  return r;
}

Report verify_phi_report(const Invocation& inv) {
  Report r;
  r.parameters = {{"n", inv.n}, {"d", inv.d}, {"weight", inv.weight}};
  r.conventions = {"weight = total word length of the Quillen chains, length = bracket length",
                   "homology of L(s^-1 H_+(K(n))) must vanish off length = weight and match chi(n) on it"};
  const auto q = verify_quasi_iso(inv.n, inv.d, inv.weight);
  ReportTable t{"homology",
                {col("weight"), col("length"), col("degree"), col("homology"), col("chi_dim"), col("rank"),
                 col("pass", ColumnType::Boolean)},
                {}};
  for (const auto& e : q.entries)
    t.add({e.weight, e.length, e.degree, ll(e.source_homology), ll(e.chi_dimension), ll(e.rank), e.pass});
  ReportTable f{"failures", {col("kind", ColumnType::Text), col("description", ColumnType::Text)}, {}};
  for (const auto& s : q.chain_map_failures) f.add({std::string("chain map"), s});
  for (const auto& s : q.naturality_failures) f.add({std::string("naturality"), s});
  r.summary = {{"passed", q.passed()}};
  r.tables = {std::move(t), std::move(f)};
  return r;
}

Report verify_cosimplicial_report(const Invocation& inv) {
  Report r;
  r.parameters = {{"n", inv.n}, {"d", inv.d}, {"weight", inv.weight}, {"length", inv.length}};
  r.conventions = {"all identities among d^i, s^j that stay within levels 0..n, as exact matrix equalities",
                   "homology grading = word length k, degree k(d-1)"};
  struct Job {
    std::string object;
    int grading;
  };
  std::vector<Job> jobs;
  for (int w = 1; w <= inv.weight; ++w) jobs.push_back({"chi", w});
  for (int k = 0; k <= inv.length; ++k) jobs.push_back({"homology", k});
  const int d = inv.d;
  auto results = parallel_map(jobs.size(), [&](std::size_t k) {
    const auto& job = jobs[k];
    StructureMatrixFn fn;
    if (job.object == "chi")
      fn = [&, w = job.grading](MapKind kind, int index, int n) {
        return kind == MapKind::Coface ? coface_map(index, n, d, w).matrix : codegeneracy_map(index, n, d, w).matrix;
      };
    else
      fn = [&, len = job.grading](MapKind kind, int index, int n) {
        return homology_structure_matrix(kind, index, n, d, len);
      };
    return cosimplicial_identity_failures(fn, inv.n);
  });
  ReportTable checks{"checks", {col("object", ColumnType::Text), col("grading"), col("failures")}, {}};
  ReportTable failures{"failures", {col("object", ColumnType::Text), col("grading"), col("description", ColumnType::Text)}, {}};
  bool passed = true;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    checks.add({jobs[k].object, jobs[k].grading, ll(results[k].size())});
    for (const auto& s : results[k]) failures.add({jobs[k].object, jobs[k].grading, s});
    passed = passed && results[k].empty();
  }
  r.summary = {{"passed", passed}};
  r.tables = {std::move(checks), std::move(failures)};
  return r;
}

Report collapse_check_report(const Invocation& inv) {
  Report r;
  r.parameters = {{"d", inv.d}, {"p_max", inv.p_max}, {"weight", inv.weight}, {"r_max", inv.r_max}};
  r.conventions = {"every stable entry of E3..E_r_max is compared with E2",
                   "chi: one complex per weight; homology: reduced homology in lengths 1..weight"};
  const int jobs = inv.weight + 1;
  auto results = parallel_map(static_cast<std::size_t>(jobs), [&](std::size_t k) {
    if (static_cast<int>(k) < inv.weight)
      return formality_collapse_check(chi_cosimplicial(inv.d, static_cast<int>(k) + 1, inv.p_max), inv.r_max);
    return formality_collapse_check(homology_cosimplicial(inv.d, inv.weight, inv.p_max), inv.r_max);
  });
  ReportTable checks{"checks", {col("object", ColumnType::Text), col("grading"), col("compared"), col("failures")}, {}};
  ReportTable failures{"failures", {col("object", ColumnType::Text), col("description", ColumnType::Text)}, {}};
  bool passed = true;
  for (int k = 0; k < jobs; ++k) {
    const bool chi = k < inv.weight;
    const std::string object = chi ? "chi" : "homology";
    const auto& rep = results[k];
    checks.add({object, chi ? k + 1 : inv.weight, ll(rep.compared), ll(rep.failures.size())});
    for (const auto& s : rep.failures) failures.add({object, s});
    passed = passed && rep.passed();
  }
  r.summary = {{"passed", passed}};
  r.tables = {std::move(checks), std::move(failures)};
  return r;
}

Report homology_e2_report(const Invocation& inv, const ComponentCache* cache) {
  Report r;
  const int degree_max = inv.degree_max < 0 ? 3 * (inv.d - 1) : inv.degree_max;
  r.parameters = {{"d", inv.d}, {"p_max", inv.p_max}, {"degree_max", degree_max}};
  r.conventions = kPageConventions;
  r.conventions.push_back("columns are normalized reduced homology H_+(K(s)); degrees q = k(d-1)");
  const auto page = cached_page(cache, {"homology-e2", inv.p_max, inv.d, degree_max},
                                [&] { return homology_side_e2(inv.d, inv.p_max, degree_max); });
  r.summary = page_summary(page);
  r.tables.push_back(page_table(page, {}));
  return r;
}

}  // namespace

Invocation parse_invocation(const std::vector<std::string>& args) {
  Invocation inv;
  CLI::App app{"knotpi: rational homotopy of long knots from the Drinfeld-Kohno Lie algebras", "knotpi"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string cache_dir;
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cache_dir, "component cache directory (overrides KNOTPI_CACHE)");
  app.add_option("--threads", inv.threads, "worker threads, 0 = all cores");

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* chi = sub("chi", "basis of chi(n) in one weight");
  chi->add_option("--n", inv.n, "number of points")->required();
  chi->add_option("--d", inv.d, "ambient dimension")->required();
  chi->add_option("--weight", inv.weight, "bracket length")->required();

  auto* e1 = sub("e1", "homotopy-side E1 page");
  auto* e2 = sub("e2", "homotopy-side E2 page");
  for (auto* s : {e1, e2}) {
    s->add_option("--d", inv.d, "ambient dimension")->required();
    s->add_option("--p-max", inv.p_max, "last cosimplicial column")->capture_default_str();
    s->add_option("--weight-max", inv.weight_max, "largest weight")->capture_default_str();
  }
  e1->add_flag("--matrices", inv.matrices, "also list the d1 matrices");

  auto* pi = sub("pi-table", "dimensions of pi_m of the long knot space (modulo immersions), m <= m-max");
  pi->add_option("--d", inv.d, "ambient dimension")->required();
  pi->add_option("--m-max", inv.m_max, "largest homotopy degree")->capture_default_str();
  pi->add_option("--max-weight", inv.max_weight, "resource limit on the weight")->capture_default_str();
  pi->add_option("--certify-limit", inv.certify_limit, "largest chi dimension checked by generic normalization")
      ->capture_default_str();

  auto* phi = sub("verify-phi", "check that phi: L(s^-1 H_+(K(n))) -> chi(n) is a natural quasi-isomorphism");
  phi->add_option("--n", inv.n, "number of points")->required();
  phi->add_option("--d", inv.d, "ambient dimension")->required();
  phi->add_option("--weight", inv.weight, "largest weight")->capture_default_str();

  auto* cos = sub("verify-cosimplicial", "check the cosimplicial identities on chi and on H_*(K)");
  cos->add_option("--n", inv.n, "top level")->required();
  cos->add_option("--d", inv.d, "ambient dimension")->required();
  cos->add_option("--weight", inv.weight, "largest chi weight")->capture_default_str();
  cos->add_option("--length", inv.length, "largest homology word length")->capture_default_str();

  auto* collapse = sub("collapse-check", "compare E3..E_r with E2 on the formal complexes");
  collapse->add_option("--d", inv.d, "ambient dimension")->required();
  collapse->add_option("--p-max", inv.p_max, "truncation")->capture_default_str();
  collapse->add_option("--weight", inv.weight, "largest weight / homology length")->capture_default_str();
  collapse->add_option("--r-max", inv.r_max, "last page")->capture_default_str();

  auto* hom = sub("homology-e2", "homology-side E2 page");
  hom->add_option("--d", inv.d, "ambient dimension")->required();
  hom->add_option("--p-max", inv.p_max, "last cosimplicial column")->capture_default_str();
  hom->add_option("--degree-max", inv.degree_max, "largest homology degree q (default 3(d-1))");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* s : app.get_subcommands()) target = s;
    throw HelpRequested(target->help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  inv.command = app.get_subcommands().front()->get_name();
  inv.format = parse_output_format(format);
  if (!cache_dir.empty()) inv.cache_dir = cache_dir;
  return inv;
}

void validate_invocation(const Invocation& inv) {
  const auto& c = inv.command;
  usage_if(std::find(kCommands.begin(), kCommands.end(), c) == kCommands.end(), "unknown command " + c);
  if (needs_knot_d(c))
    usage_if(inv.d < 4, "--d must be >= 4: the spectral sequence of the long knot space is only claimed for d >= 4 (got " +
                            std::to_string(inv.d) + ")");
  else
    usage_if(inv.d < 3, "--d must be >= 3 (got " + std::to_string(inv.d) + ")");
  usage_if(inv.n < 0, "--n must be >= 0");
  usage_if(inv.weight < 1, "--weight must be >= 1");
  usage_if(inv.length < 0, "--length must be >= 0");
  usage_if(inv.p_max < 0, "--p-max must be >= 0");
  usage_if(inv.weight_max < 1, "--weight-max must be >= 1");
  usage_if(inv.m_max < 0, "--m-max must be >= 0");
  usage_if(inv.r_max < 2, "--r-max must be >= 2");
  usage_if(inv.max_weight < 1, "--max-weight must be >= 1");
  usage_if(c == "homology-e2" && inv.degree_max < -1, "--degree-max must be >= 0");

  // desk-scale limits; above them the exact linear algebra gets slow
  if (c == "chi") guard_if(inv.n > 10 || inv.weight > 8, "chi is limited to n <= 10, weight <= 8");
  if (c == "verify-phi") guard_if(inv.n > 5 || inv.weight > 4, "verify-phi is limited to n <= 5, weight <= 4");
  if (c == "verify-cosimplicial")
    guard_if(inv.n > 7 || inv.weight > 5 || inv.length > 4, "verify-cosimplicial is limited to n <= 7, weight <= 5, length <= 4");
  if (c == "e1" || c == "e2")
    guard_if(inv.p_max > 12 || inv.weight_max > 8, c + " is limited to p-max <= 12, weight-max <= 8");
  if (c == "collapse-check") guard_if(inv.p_max > 8 || inv.weight > 4, "collapse-check is limited to p-max <= 8, weight <= 4");
  if (c == "homology-e2") {
    const int dm = inv.degree_max < 0 ? 3 * (inv.d - 1) : inv.degree_max;
    guard_if(inv.p_max > 9 || dm / (inv.d - 1) > 4, "homology-e2 is limited to p-max <= 9, degree-max <= 4(d-1)");
  }
  if (c == "pi-table") {
    PiTableLimits limits;
    limits.max_weight = inv.max_weight;
    (void)pi_table_top_weight(inv.d, inv.m_max, limits);
  }
}

Report run_invocation(const Invocation& inv, const ComponentCache* cache) {
  set_thread_count(inv.threads);
  Report r;
  const auto& c = inv.command;
  if (c == "chi") r = chi_report(inv, cache);
  else if (c == "e1") r = e1_report(inv);
  else if (c == "e2") r = e2_report(inv, cache);
  else if (c == "pi-table") r = pi_table_report(inv, cache);
  else if (c == "verify-phi") r = verify_phi_report(inv);
  else if (c == "verify-cosimplicial") r = verify_cosimplicial_report(inv);
  else if (c == "collapse-check") r = collapse_check_report(inv);
  else if (c == "homology-e2") r = homology_e2_report(inv, cache);
  else throw UsageError("unknown command " + c);
  r.command = c;
  return r;
}

int report_exit_code(const Report& r) {
  if (const auto* v = r.summary_value("passed"))
    if (const auto* b = std::get_if<bool>(v); b && !*b) return kExitVerification;
  return kExitOk;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto inv = parse_invocation(args);
    validate_invocation(inv);
    std::optional<ComponentCache> cache;
    if (auto dir = resolve_cache_dir(inv.cache_dir)) cache.emplace(*dir);
    const auto start = std::chrono::steady_clock::now();
    auto report = run_invocation(inv, cache ? &*cache : nullptr);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << emit_report(report, inv.format);
    return report_exit_code(report);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceGuard& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace knotpi
