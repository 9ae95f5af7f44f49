// Command-line front end: group construction, design verification, parameter
// enumeration and filtering, exhaustive HPDF search, the example catalog,
// descendant parameters and Pell triples.
//
// Exit codes: 0 success/verified/found, 1 usage or I/O error,
// 2 verification failed, 3 infeasible or exhaustively empty,
// 4 node budget exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include <hpdf/catalog.hpp>
#include <hpdf/descendants.hpp>
#include <hpdf/io.hpp>
#include <hpdf/search.hpp>

using namespace hpdf;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFail = 2;
constexpr int kInfeasible = 3;
constexpr int kBudget = 4;

std::string sizes_text(const std::vector<long long>& sizes) {
  ParamSet p;
  p.K = group_sizes(sizes);
  return format_size_multiset(p);
}

std::string report_headline(const VerificationReport& rep) {
  std::string s = design_kind_name(rep.kind);
  if (!rep.passed()) {
    if (!rep.partition_ok) return s + " (blocks do not partition the group)";
    return s + " (" + std::to_string(rep.deviations.size()) + " covering deviations)";
  }
  switch (rep.kind) {
    case DesignKind::pds:
      return s + " (" + std::to_string(rep.v) + ", " + std::to_string(rep.block_sizes.at(0)) +
             ", " + std::to_string(rep.alpha) + ", " + std::to_string(rep.beta) + ")";
    case DesignKind::rds:
      return s + " (" + std::to_string(rep.rds_quotient) + ", " +
             std::to_string(rep.rds_forbidden_order) + ", " +
             std::to_string(rep.block_sizes.at(0)) + ", " + std::to_string(rep.lambda) + ")";
    case DesignKind::ds:
      return s + " (" + std::to_string(rep.v) + ", " + std::to_string(rep.block_sizes.at(0)) +
             ", " + std::to_string(rep.lambda) + ")";
    default:
      return s + " (" + std::to_string(rep.v) + ", " + sizes_text(rep.block_sizes) + ", " +
             std::to_string(rep.lambda) + ")";
  }
}

std::string family_line(const Family& fam) {
  json blocks = json::array();
  for (const Block& b : fam.blocks) blocks.push_back(b);
  return json{{"blocks", std::move(blocks)}}.dump();
}

std::string human_family(const Family& fam) {
  std::string s = "family:";
  for (const Block& b : fam.blocks) {
    s += " {";
    for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    s += "}";
  }
  return s;
}

int default_jobs() {
  if (const char* env = std::getenv("HPDF_JOBS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group toolkit for partitioned difference families"};
  app.require_subcommand(1);
  int rc = kOk;

  // ----- group -----
  struct {
    std::string recipe, out;
    bool json = false;
  } gopt;
  auto* cmd_group = app.add_subcommand("group", "construct or load a group and validate it");
  cmd_group
      ->add_option("recipe", gopt.recipe,
                   "cyclic(n) | dihedral(2n) | dicyclic(4n) | product(r1,r2) | "
                   "semidirect(m,n,r) | sl23 | file:<path>")
      ->required();
  cmd_group->add_option("--out", gopt.out, "write the group JSON to this file");
  cmd_group->add_flag("--json", gopt.json, "print the group as JSON");
  cmd_group->callback([&] {
    const FiniteGroup G = parse_group_recipe(gopt.recipe);
    const ValidationReport rep = validate_group(G);
    if (!rep.ok()) {
      std::cerr << "invalid group: " << rep.summary() << '\n';
      rc = kVerifyFail;
      return;
    }
    if (!gopt.out.empty()) save_group(G, gopt.out);
    if (gopt.json)
      std::cout << group_to_json(G).dump(1) << '\n';
    else
      std::cout << "group " << G.descriptor() << ": order " << G.order() << ", valid\n";
  });

  // ----- verify -----
  struct {
    std::string path, kind = "auto";
    std::vector<int> forbidden;
    bool table = false, json = false;
  } vopt;
  auto* cmd_verify = app.add_subcommand("verify", "verify a family file as a design");
  cmd_verify->add_option("family", vopt.path, "family JSON file")->required();
  cmd_verify->add_option("--kind", vopt.kind, "auto|hpdf|pdf|df|ds|pds|rds")
      ->check(CLI::IsMember({"auto", "hpdf", "pdf", "df", "ds", "pds", "rds"}));
  cmd_verify
      ->add_option("--forbidden", vopt.forbidden,
                   "forbidden subgroup elements for RDS verification")
      ->delimiter(',');
  cmd_verify->add_flag("--table", vopt.table, "print pairwise difference tables");
  cmd_verify->add_flag("--json", vopt.json, "machine-readable report");
  cmd_verify->callback([&] {
    const FamilyDocument doc = load_family(vopt.path);
    auto single_block = [&]() -> const Block& {
      if (doc.family.blocks.size() != 1)
        throw std::runtime_error("this verifier expects a family with exactly one block");
      return doc.family.blocks.front();
    };
    auto forbidden_subgroup = [&] {
      if (vopt.forbidden.empty())
        throw std::runtime_error("RDS verification needs --forbidden");
      Subgroup N;
      N.members = sorted_block(std::vector<int>(vopt.forbidden.begin(), vopt.forbidden.end()));
      N.parent_order = doc.group.order();
      return N;
    };

    std::string kind = vopt.kind;
    if (kind == "auto" && !vopt.forbidden.empty()) kind = "rds";
    VerificationReport rep;
    bool accepted;
    if (kind == "auto") {
      rep = verify_hpdf(doc.group, doc.family);
      if (!rep.passed()) {
        if (doc.family.blocks.size() == 1) {
          VerificationReport ds = verify_ds(doc.group, single_block());
          if (ds.passed())
            rep = std::move(ds);
          else {
            VerificationReport pds = verify_pds(doc.group, single_block());
            if (pds.passed()) rep = std::move(pds);
          }
        } else {
          VerificationReport df = verify_df(doc.group, doc.family);
          if (df.passed()) rep = std::move(df);
        }
      }
      accepted = rep.passed();
    } else if (kind == "hpdf") {
      rep = verify_hpdf(doc.group, doc.family);
      accepted = rep.kind == DesignKind::hpdf;  // a plain PDF is not enough
    } else if (kind == "pdf") {
      rep = verify_pdf(doc.group, doc.family);
      accepted = rep.passed();
    } else if (kind == "df") {
      rep = verify_df(doc.group, doc.family);
      accepted = rep.passed();
    } else if (kind == "ds") {
      rep = verify_ds(doc.group, single_block());
      accepted = rep.passed();
    } else if (kind == "pds") {
      rep = verify_pds(doc.group, single_block());
      accepted = rep.passed();
    } else {
      rep = verify_rds(doc.group, single_block(), forbidden_subgroup());
      accepted = rep.passed();
    }

    if (vopt.table) {
      for (const Block& b : doc.family.blocks)
        if (b.size() >= 2)
          std::cout << render_difference_table(doc.group, b) << '\n';
    }
    if (vopt.json) {
      json j = report_to_json(rep, &doc.group);
      j["accepted"] = accepted;
      std::cout << j.dump(1) << '\n';
    } else {
      std::cout << report_headline(rep) << '\n';
      if (!accepted && rep.passed())
        std::cout << "  (does not meet the requested kind \"" << kind << "\")\n";
      size_t shown = 0;
      for (const Deviation& d : rep.deviations) {
        if (shown++ == 10) {
          std::cout << "  ... " << rep.deviations.size() - 10 << " more\n";
          break;
        }
        std::cout << "  element " << doc.group.label(d.element) << ": observed " << d.observed
                  << ", expected " << d.expected << '\n';
      }
    }
    rc = accepted ? kOk : kVerifyFail;
  });

  // ----- params -----
  struct {
    long long vmin = 4, vmax = 0, min_blocks = 3;
    bool json = false;
  } popt;
  auto* cmd_params = app.add_subcommand("params", "enumerate admissible Hadamard size multisets");
  cmd_params->add_option("--v-max", popt.vmax, "largest group order")->required();
  cmd_params->add_option("--v-min", popt.vmin, "smallest group order")->capture_default_str();
  cmd_params->add_option("--min-blocks", popt.min_blocks, "minimum number of blocks")->capture_default_str();
  cmd_params->add_flag("--json", popt.json);
  cmd_params->callback([&] {
    if (popt.vmin < 4) popt.vmin = 4;
    json rows = json::array();
    if (!popt.json) std::cout << "   v  K                            lambda\n";
    for (long long v = popt.vmin + (popt.vmin % 2); v <= popt.vmax; v += 2) {
      for (const ParamSet& p : enumerate_admissible(v, popt.min_blocks)) {
        if (popt.json)
          rows.push_back(paramset_to_json(p));
        else {
          char line[80];
          std::snprintf(line, sizeof line, "%4lld  %-28s %6lld", p.v,
                        format_size_multiset(p).c_str(), p.lambda);
          std::cout << line << '\n';
        }
      }
    }
    if (popt.json) std::cout << rows.dump(1) << '\n';
  });

  // ----- filter -----
  struct {
    std::vector<long long> k;
    std::string recipe;
    bool index2 = false, json = false;
  } fopt;
  auto* cmd_filter = app.add_subcommand("filter", "run the feasibility filters on a size multiset");
  cmd_filter->add_option("--k", fopt.k, "block sizes")->delimiter(',')->required();
  cmd_filter->add_option("--group", fopt.recipe, "gate the index-2 filter on this group");
  cmd_filter->add_flag("--index2", fopt.index2,
                       "apply the index-2 filter without a group (assumes an index-2 subgroup)");
  cmd_filter->add_flag("--json", fopt.json);
  cmd_filter->callback([&] {
    std::vector<long long> sizes = fopt.k;
    const HpdfCheck adm = is_admissible_hpdf(sizes);
    FeasibilityVerdict verdict = adm.verdict;
    std::sort(sizes.begin(), sizes.end(), std::greater<long long>());
    if (verdict.admissible && sizes.size() == 3) {
      verdict = prime_filter_three_block(sizes[0], sizes[1], sizes[2]);
      if (verdict.admissible && sizes.back() == 1)
        verdict = singleton_three_block_certificate(adm.lambda);
    }
    if (verdict.admissible) {
      bool apply_index2 = fopt.index2;
      if (!fopt.recipe.empty()) {
        const FiniteGroup G = parse_group_recipe(fopt.recipe);
        apply_index2 = !index2_subgroups(G).empty();
      } else if (!fopt.index2) {
        apply_index2 = true;  // parameter-level check; meaningful for groups with one
      }
      if (apply_index2) verdict = index2_partition_filter(sizes, adm.lambda);
    }
    if (fopt.json)
      std::cout << verdict_to_json(verdict).dump(1) << '\n';
    else if (verdict.admissible)
      std::cout << "admissible: " << sizes_text(fopt.k) << " (" << verdict.witness << ")\n";
    else
      std::cout << "infeasible: " << sizes_text(fopt.k) << " -- " << verdict.failed_rule << ": "
                << verdict.witness << '\n';
    rc = verdict.admissible ? kOk : kInfeasible;
  });

  // ----- search -----
  struct {
    std::string recipe, mode = "first", normalization = "translation";
    std::vector<int> k;
    bool exhaustive = false, json = false;
    int jobs = 0;
    long long budget = -1;
  } sopt;
  auto* cmd_search = app.add_subcommand("search", "exhaustive backtracking search for HPDFs");
  cmd_search->add_option("--group", sopt.recipe, "group recipe")->required();
  cmd_search->add_option("--k", sopt.k, "block sizes")->delimiter(',')->required();
  cmd_search->add_option("--mode", sopt.mode, "first|all|count")
      ->capture_default_str()
      ->check(CLI::IsMember({"first", "all", "count"}));
  cmd_search->add_flag("--exhaustive", sopt.exhaustive, "sweep the whole space (mode=all)");
  cmd_search->add_option("--normalization", sopt.normalization, "translation|none")
      ->capture_default_str()
      ->check(CLI::IsMember({"translation", "none"}));
  cmd_search->add_option("--jobs", sopt.jobs, "parallel workers (default $HPDF_JOBS or 1)");
  cmd_search->add_option("--node-budget", sopt.budget, "abort after this many search nodes");
  cmd_search->add_flag("--json", sopt.json);
  cmd_search->callback([&] {
    const FiniteGroup G = parse_group_recipe(sopt.recipe);
    SearchSpec spec;
    spec.group = &G;
    spec.sizes = sopt.k;
    spec.mode = sopt.exhaustive                ? SearchMode::all
                : sopt.mode == std::string("all")   ? SearchMode::all
                : sopt.mode == std::string("count") ? SearchMode::count
                                                    : SearchMode::first;
    spec.normalization =
        sopt.normalization == "none" ? Normalization::none : Normalization::translation;
    spec.parallel_width = sopt.jobs >= 1 ? sopt.jobs : default_jobs();
    if (sopt.budget >= 0) spec.node_budget = sopt.budget;
    spec.on_progress = [](long long nodes) {
      std::cerr << "... " << nodes << " nodes\n";
    };

    std::cerr << "searching " << G.descriptor() << " for K = " << sizes_text(std::vector<long long>(
                     sopt.k.begin(), sopt.k.end()))
              << '\n';
    const FeasibilityVerdict pre = prefilter(spec);
    if (!pre.admissible) {
      if (sopt.json)
        std::cout << json{{"skipped", verdict_to_json(pre)}}.dump() << '\n';
      else
        std::cout << "skipped by filter " << pre.failed_rule << ": " << pre.witness << '\n';
      rc = kInfeasible;
      return;
    }

    const bool stream = spec.parallel_width <= 1 && spec.mode != SearchMode::first;
    if (stream)
      spec.on_family = [&](const Family& fam) {
        std::cout << (sopt.json ? family_line(fam) : human_family(fam)) << '\n';
      };
    const SearchOutcome out = search(spec);
    if (!stream)
      for (const Family& fam : out.families)
        std::cout << (sopt.json ? family_line(fam) : human_family(fam)) << '\n';

    if (sopt.json) {
      std::cout << json{{"summary",
                         json{{"families", out.families_found},
                              {"exhaustive", out.exhaustive},
                              {"nodes", out.nodes_explored},
                              {"wall_ms", out.wall_time.count()},
                              {"group", G.descriptor()},
                              {"skip_reason", out.skip_reason}}}}
                       .dump()
                << '\n';
    } else {
      std::cout << (out.exhaustive ? "exhaustive" : "partial") << " search: "
                << out.families_found << " family(ies), " << out.nodes_explored << " nodes, "
                << out.wall_time.count() << " ms\n";
      if (!out.skip_reason.empty()) std::cout << "certificate: " << out.skip_reason << '\n';
    }
    std::cerr << "nodes=" << out.nodes_explored << " wall_ms=" << out.wall_time.count()
              << " exhaustive=" << (out.exhaustive ? "yes" : "no") << '\n';
    rc = out.families_found > 0 ? kOk : (!out.exhaustive ? kBudget : kInfeasible);
  });

  // ----- catalog -----
  auto* cmd_catalog = app.add_subcommand("catalog", "the built-in example catalog");
  cmd_catalog->require_subcommand(1);
  struct {
    bool json = false;
  } clopt;
  auto* cat_list = cmd_catalog->add_subcommand("list", "list catalog entries");
  cat_list->add_flag("--json", clopt.json);
  cat_list->callback([&] {
    if (clopt.json) {
      json rows = json::array();
      for (const CatalogEntry& e : catalog_entries())
        rows.push_back(json{{"id", e.id},
                            {"group", e.group_name},
                            {"recipe", e.group_recipe},
                            {"status", e.status},
                            {"provenance", e.provenance}});
      std::cout << rows.dump(1) << '\n';
      return;
    }
    for (const CatalogEntry& e : catalog_entries()) {
      std::cout << e.id << ": " << e.group_name;
      if (e.kind == CatalogEntryKind::stub)
        std::cout << " [" << e.status << "]";
      else if (e.kind == CatalogEntryKind::rds)
        std::cout << " -- (" << e.claimed_rds_quotient << "," << e.claimed_rds_forbidden << ","
                  << e.claimed_sizes.at(0) << "," << e.claimed_lambda << ") RDS";
      else if (e.kind == CatalogEntryKind::ds)
        std::cout << " -- (" << e.claimed_v << "," << e.claimed_sizes.at(0) << ","
                  << e.claimed_lambda << ") DS";
      else
        std::cout << " -- (" << e.claimed_v << ", " << sizes_text(e.claimed_sizes) << ", "
                  << e.claimed_lambda << ") HPDF";
      std::cout << '\n';
    }
  });
  struct {
    std::string id;
    bool json = false;
  } cvopt;
  auto* cat_verify = cmd_catalog->add_subcommand("verify", "reverify catalog entries");
  cat_verify->add_option("id", cvopt.id, "verify a single entry");
  cat_verify->add_flag("--json", cvopt.json);
  cat_verify->callback([&] {
    json rows = json::array();
    bool all = true;
    for (const CatalogEntry& e : catalog_entries()) {
      if (!cvopt.id.empty() && e.id != cvopt.id) continue;
      if (e.kind == CatalogEntryKind::stub) continue;
      const CatalogCheck c = verify_entry(e);
      all = all && c.pass;
      if (cvopt.json)
        rows.push_back(json{{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
      else
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.id
                  << (c.detail.empty() ? "" : " -- " + c.detail) << '\n';
    }
    if (cvopt.json) std::cout << rows.dump(1) << '\n';
    rc = all ? kOk : kVerifyFail;
  });
  struct {
    std::string id, out;
  } ceopt;
  auto* cat_export = cmd_catalog->add_subcommand("export", "write an entry as a family file");
  cat_export->add_option("id", ceopt.id)->required();
  cat_export->add_option("--out", ceopt.out, "output path (default stdout)");
  cat_export->callback([&] {
    const CatalogEntry& e = get_entry(ceopt.id);
    if (e.kind == CatalogEntryKind::stub)
      throw std::runtime_error("entry " + e.id + " has no block data to export");
    const json j = family_to_json(*e.group, e.family);
    if (ceopt.out.empty())
      std::cout << j.dump(1) << '\n';
    else {
      std::ofstream f(ceopt.out);
      if (!f) throw std::runtime_error("cannot write " + ceopt.out);
      f << j.dump(1) << '\n';
    }
  });

  // ----- descendants -----
  struct {
    std::string base_path;
    std::vector<long long> k;
    long long n = 0;
    bool min_n = false, json = false;
  } dopt;
  auto* cmd_desc = app.add_subcommand("descendants", "descendant parameter sets of a Hadamard base");
  cmd_desc->add_option("--base", dopt.base_path, "base ParamSet JSON file");
  cmd_desc->add_option("--k", dopt.k, "base block sizes (lambda inferred as v/2)")->delimiter(',');
  cmd_desc->add_option("--n", dopt.n, "composition parameter n");
  cmd_desc->add_flag("--min-n", dopt.min_n, "report the smallest admissible n");
  cmd_desc->add_flag("--json", dopt.json);
  cmd_desc->callback([&] {
    if (dopt.base_path.empty() == dopt.k.empty())
      throw std::runtime_error("give exactly one of --base or --k");
    if (dopt.min_n == (dopt.n >= 1))
      throw std::runtime_error("give exactly one of --n or --min-n");
    ParamSet base;
    if (!dopt.base_path.empty())
      base = load_paramset(dopt.base_path);
    else {
      long long v = 0;
      for (long long s : dopt.k) v += s;
      base = make_param_set(dopt.k, v / 2);
    }
    const long long n = dopt.min_n ? min_descendant_n(base) : dopt.n;
    const auto d = descendant_params(base, n);
    const ComponentSet comp = components(2 * n + 1);
    json j{{"base", paramset_to_json(base)},
           {"n", n},
           {"modulus", 2 * n + 1},
           {"components", comp.components},
           {"gate_bound", 2 * base.max_size()},
           {"pass", d.has_value()}};
    if (d) j["result"] = paramset_to_json(d->result);
    if (dopt.json)
      std::cout << j.dump(1) << '\n';
    else if (d)
      std::cout << "n = " << n << ": (" << d->result.v << ", " << format_size_multiset(d->result)
                << ", " << d->result.lambda << ")\n";
    else
      std::cout << "n = " << n << ": gate fails (a component of " << 2 * n + 1
                << " is <= " << 2 * base.max_size() << ")\n";
    rc = d ? kOk : kInfeasible;
  });

  // ----- pell -----
  struct {
    int count = 0;
    bool json = false;
  } plopt;
  auto* cmd_pell = app.add_subcommand("pell", "difference-set parameters with v = 2*lambda");
  cmd_pell->add_option("--count", plopt.count, "how many triples")->required();
  cmd_pell->add_flag("--json", plopt.json);
  cmd_pell->callback([&] {
    const auto triples = pell_triples(plopt.count);
    json rows = json::array();
    for (const PellTriple& t : triples) {
      const SquareCheck sq = pell_square_check(t.k, t.lambda);
      if (plopt.json)
        rows.push_back(json{{"v", t.v}, {"k", t.k}, {"lambda", t.lambda}, {"root", sq.root}});
      else
        std::cout << "(" << t.v << ", " << t.k << ", " << t.lambda << ")  k-lambda = " << sq.root
                  << "^2\n";
    }
    if (plopt.json) std::cout << rows.dump(1) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return rc;
}
