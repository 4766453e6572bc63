#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcoh/acceptance.hpp"
#include "pcoh/catalog.hpp"
#include "pcoh/report.hpp"

using namespace pcoh;
using nlohmann::json;

namespace {

struct Failure {
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(const std::string& kind, const std::string& message) { throw Failure{kind, message}; }

struct GroupArg {
  std::string id;
  std::string as;
};

struct Loaded {
  std::string id;
  GroupPtr group;
};

Loaded load(const GroupArg& arg) {
  if (std::filesystem::is_regular_file(arg.id)) {
    const std::string id = arg.as.empty() ? std::filesystem::path(arg.id).stem().string() : arg.as;
    const auto entry = arg.as.empty() ? CatalogEntry{id, load_pcp(arg.id), {}, {}} : from_pcp_file(arg.as, arg.id);
    return {id, make_group(entry.presentation)};
  }
  if (!arg.as.empty()) fail("usage", "--as only applies to .pcp files");
  return {arg.id, make_group(builtin(arg.id).presentation)};
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail("io", "cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

std::string dims_line(const std::vector<std::size_t>& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? " " : "") + std::to_string(d[i]);
  return out;
}

std::string show(const Certified& c) {
  if (!c.value) return "-";
  return std::to_string(*c.value) + (c.certified ? "" : "?");
}

void cmd_info(const GroupArg& arg) {
  const auto [id, g] = load(arg);
  const auto fp = compute_fingerprint(*g);
  std::cout << id << ": order " << g->order() << ", p " << g->p() << ", generators " << minimal_generators(*g).size()
            << ", rank " << fp.p_rank << ", center rank " << fp.center_rank
            << ", p-central " << (fp.p_central ? "yes" : "no") << "\n";
  std::cout << "presentation hash " << presentation_hash(g->presentation()) << "\n";
  std::cout << serialize_pcp(g->presentation());
}

void cmd_cohomology(const GroupArg& arg, unsigned degree, const std::string& cache_dir, const ResolutionOptions& opts) {
  const auto [id, g] = load(arg);
  const auto cache = ResolutionCache::locate(cache_dir);
  const auto res = cache ? cache->get(g, degree, opts) : std::make_shared<const Resolution>(g, degree, opts);
  const Cohomology h(res);
  std::cout << "degree  dim  decomposable\n";
  for (unsigned k = 0; k <= degree; ++k)
    std::cout << std::setw(6) << k << std::setw(5) << h.dim(k) << std::setw(14) << (k ? h.decomposables(k).dim() : 0)
              << "\n";
  if (cache) std::cout << "cache " << (cache->hits() ? "hit" : "stored") << " " << cache->path_for(g->presentation()).string() << "\n";
}

void cmd_invariants(const GroupArg& arg, unsigned degree, const std::string& json_out, const std::string& cache_dir,
                    const ResolutionOptions& opts) {
  const auto [id, g] = load(arg);
  const auto cache = ResolutionCache::locate(cache_dir);
  const auto r = make_report(id, g, degree, opts, cache ? cache->provider() : ResolutionProvider{});
  const auto j = report_json(r);
  if (!json_out.empty()) {
    write_or_print(json_out, j.dump(2) + "\n");
    if (json_out == "-") return;
  }
  std::cout << id << " at N=" << r.truncation_degree << "\n"
            << "  type " << type_string(r.type) << (r.type.certified ? "" : "?") << "\n"
            << "  e " << show(r.e) << "  h " << show(r.h) << "\n"
            << "  d0 " << show(r.d0) << "  d1 " << show(r.d1) << "\n"
            << "  e' " << show(r.e_prime) << "  e'' " << show(r.e_double_prime) << "\n"
            << "  Cess " << (r.cess_nonzero ? (*r.cess_nonzero ? "nonzero" : "zero") : "-") << "\n";
  if (!r.error.empty()) std::cout << "  note: " << r.error << "\n";
}

void cmd_cess(const GroupArg& arg, unsigned degree, const ResolutionOptions& opts) {
  const auto [id, g] = load(arg);
  const Analysis a(g, degree, opts);
  std::cout << id << " at N=" << degree << "\n"
            << "  Cess        " << dims_line(a.cess_dims().dims) << "\n"
            << "  Q_A Cess    " << dims_line(a.qa_cess_dims().dims) << "\n"
            << "  P_C Cess    " << dims_line(a.pc_cess_dims().dims) << "\n"
            << "  e' " << show(a.e_prime()) << "  e'' " << show(a.e_double_prime()) << "\n";
}

void cmd_table(const std::vector<std::string>& ids, std::optional<unsigned> degree, const std::string& csv_out,
               const std::string& cache_dir, const ResolutionOptions& opts) {
  std::vector<Loaded> groups;
  for (const auto& id : ids) groups.push_back(load({id, {}}));
  const auto cache = ResolutionCache::locate(cache_dir);
  std::vector<InvariantReport> reports(groups.size());
  std::vector<std::string> errors(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < groups.size();) {
      try {
        const auto n = degree.value_or(default_degree(groups[i].group->order(), Suite::quick));
        reports[i] = make_report(groups[i].id, groups[i].group, n, opts, cache ? cache->provider() : ResolutionProvider{});
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1u, static_cast<unsigned>(groups.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) fail("computation", groups[i].id + ": " + errors[i]);

  std::cout << std::left << std::setw(7) << "Order" << std::setw(12) << "#" << std::setw(12) << "Type" << std::setw(6)
            << "e" << std::setw(6) << "d0" << std::setw(6) << "d1" << std::setw(6) << "e'" << "\n";
  for (const auto& r : reports)
    std::cout << std::setw(7) << r.order << std::setw(12) << r.group_id << std::setw(12) << type_string(r.type)
              << std::setw(6) << show(r.e) << std::setw(6) << show(r.d0) << std::setw(6) << show(r.d1) << std::setw(6)
              << show(r.e_prime) << "\n";
  if (!csv_out.empty()) {
    std::string text = csv_header() + "\n";
    for (const auto& r : reports) text += csv_row(r) + "\n";
    write_or_print(csv_out, text);
  }
}

int cmd_verify(const std::string& suite_name) {
  const auto suite = parse_suite(suite_name);
  if (!suite) fail("usage", "unknown suite '" + suite_name + "'");
  bool failed = false;
  run_acceptance(*suite, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    failed = failed || r.status == CriterionResult::Status::fail;
  });
  return failed ? 1 : 0;
}

int report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central-detection invariants of p-group cohomology"};
  app.require_subcommand(1);
  std::size_t budget = ResolutionOptions{}.budget_columns;
  app.add_option("--budget", budget, "Column cap for any linear-algebra problem")->check(CLI::PositiveNumber);

  GroupArg group;
  unsigned degree = 0;
  std::string cache_dir, json_out, csv_out, suite = "quick";
  std::vector<std::string> ids;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("group", group.id, "Built-in id (e.g. Q8, 32#18, \"Q8 x Z4\") or a .pcp file")->required();
    sub->add_option("--as", group.as, "Known id a .pcp file must match");
  };
  auto* info = app.add_subcommand("info", "Order, ranks and presentation");
  add_group(info);
  auto* coh = app.add_subcommand("cohomology", "Dimensions of H^k through the degree bound");
  add_group(coh);
  coh->add_option("--degree,-N", degree)->required();
  coh->add_option("--cache", cache_dir, "Resolution cache directory (default: $PCOH_CACHE_DIR)");
  auto* inv = app.add_subcommand("invariants", "Type, e, h, d0, d1, e', e''");
  add_group(inv);
  inv->add_option("--degree,-N", degree);
  inv->add_option("--json", json_out, "Write the report as JSON ('-' for stdout)");
  inv->add_option("--cache", cache_dir);
  auto* cess = app.add_subcommand("cess", "Central essential cohomology");
  add_group(cess);
  cess->add_option("--degree,-N", degree);
  auto* table = app.add_subcommand("table", "One row per group");
  table->add_option("ids", ids)->required();
  table->add_option("--degree,-N", degree);
  table->add_option("--csv", csv_out, "Write rows as CSV ('-' for stdout)");
  table->add_option("--cache", cache_dir);
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"quick", "full", "stretch"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  ResolutionOptions opts;
  opts.budget_columns = budget;
  auto degree_for = [&](const GroupArg& arg) {
    return degree ? degree : default_degree(load(arg).group->order(), Suite::quick);
  };

  try {
    if (*info) cmd_info(group);
    if (*coh) cmd_cohomology(group, degree, cache_dir, opts);
    if (*inv) cmd_invariants(group, degree_for(group), json_out, cache_dir, opts);
    if (*cess) cmd_cess(group, degree_for(group), opts);
    if (*table) cmd_table(ids, degree ? std::optional<unsigned>(degree) : std::nullopt, csv_out, cache_dir, opts);
    if (*verify) return cmd_verify(suite);
  } catch (const Failure& f) {
    return report_error(f.kind, f.message);
  } catch (const PcpParseError& e) {
    return report_error("parse", e.what());
  } catch (const CatalogError& e) {
    return report_error("catalog", e.what());
  } catch (const BudgetExceeded& e) {
    return report_error("budget", e.what());
  } catch (const std::exception& e) {
    return report_error("computation", e.what());
  }
  return 0;
}
