// Command-line surface: analyze, verify, enumerate, haar, measures,
// make-schreier, report. Exit codes: 0 success, 1 property/agreement
// violation, 2 usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "rtglab/serialization.hpp"
#include "rtglab/verify.hpp"

namespace fs = std::filesystem;
using namespace rtglab;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

InstanceFile load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

Json partition_json(const AlexandrovTopology& t) {
    auto comp = component_of(t);
    int m = 0;
    for (int c : comp) m = std::max(m, c + 1);
    std::vector<std::vector<int>> cells(m);
    for (int x = 0; x < t.points; ++x) cells[comp[x]].push_back(x);
    std::sort(cells.begin(), cells.end());
    Json out = Json::array();
    for (auto& c : cells) out.push_back(c);
    return out;
}

Json subgrp_json(const Subgrp& s) {
    Json arr = Json::array();
    for (int x : s.elements()) arr.push_back(x);
    return arr;
}

Json analyze_instance(const RtGroup& r, bool with_functions) {
    Json out;
    out["id"] = r.id();
    out["order"] = r.order();
    if (!r.group.name.empty()) out["group"] = r.group.name;
    out["cone"] = subgrp_json(r.cone);
    out["lambda"] = subgrp_json(topological_center(r));
    out["admissible"] = is_admissible(r);
    out["topological"] = is_topological_direct(r);
    out["hausdorff"] = separation(r.tau).is_hausdorff;
    out["sigma_partition"] = partition_json(sigma_topology(r));
    out["sigma_sigma_partition"] = partition_json(sigma_sigma_topology(r));
    out["n_of_g"] = subgrp_json(n_of_g(r));

    Json qflags = Json::array();
    for (const Subgrp& k : subgroups(r.group)) {
        if (!is_normal(r.group, k)) continue;
        QuotientRtg q = quotient_rtg(r, k);
        qflags.push_back(Json{{"kernel", subgrp_json(k)},
                              {"hausdorff", q.hausdorff},
                              {"topological", q.topological},
                              {"sigma_closed", q.kernel_sigma_closed},
                              {"sigma_sigma_closed", q.kernel_sigma_sigma_closed}});
    }
    out["quotient_flags"] = std::move(qflags);

    if (with_functions) {
        FnSubspace csig = continuous_functions(r, TopologyTag::sigma);
        Json fns;
        fns["c_tau_dim"] = continuous_functions(r, TopologyTag::tau).dimension();
        fns["c_sigma_dim"] = csig.dimension();
        fns["lc_dim"] = lc_space(r).dimension();
        fns["d_dim"] = d_space(r).dimension();
        fns["ap_wap_dim"] = ap_wap(r).space.dimension();
        fns["ap_wap_degenerate"] = true;
        fns["fix_c_sigma"] = subgrp_json(fix(r, csig));
        out["functions"] = std::move(fns);
    }
    return out;
}

Json meas_canonical_json(const Meas& m) {
    Json arr = Json::array();
    for (const CRat& c : m.canonical) arr.push_back(crat_to_json(c));
    return arr;
}

int cmd_analyze(const std::string& path, bool with_functions, bool pretty) {
    InstanceFile inst = load_instance(path);
    if (pretty) {
        std::cout << "tau:\n" << pretty_print(inst.rtg.tau);
        std::cout << "sigma:\n" << pretty_print(sigma_topology(inst.rtg));
        return 0;
    }
    std::cout << analyze_instance(inst.rtg, with_functions).dump(2) << "\n";
    return 0;
}

int cmd_measures(const std::string& path) {
    InstanceFile inst = load_instance(path);
    const RtGroup& r = inst.rtg;
    Json out;
    out["id"] = r.id();
    out["mc_dim"] = mc_subspace(r).dimension();
    out["msigma_dim"] = msigma_subspace(r).dimension();
    MwResult mw = mw_subspace(r);
    out["mw_dim"] = mw.space.dimension();
    out["mw_degenerate"] = mw.finite_degenerate;
    out["lc_dim"] = lc_measures(r).dimension();
    out["lg_dim"] = lg_measures(r).dimension();
    HaarResult h = haar_solver(r);
    out["haar"] = Json{{"canonical", meas_canonical_json(h.measure)},
                       {"measure", meas_to_json(h.measure)},
                       {"uniqueness_dim", h.uniqueness_dim}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_haar(const std::string& path, const std::string& mode_name) {
    InstanceFile inst = load_instance(path);
    const RtGroup& r = inst.rtg;
    SystemMode mode = mode_name == "strict" ? SystemMode::strict : SystemMode::relaxed;
    HaarResult solver = haar_solver(r);
    bool all_agree = true;
    Json systems = Json::array();
    for (const NormalSystem& sys : find_normal_systems(r, mode)) {
        Json chain = Json::array();
        for (const Subgrp& l : sys.chain) chain.push_back(subgrp_json(l));
        Json steps = Json::array();
        for (size_t i = 0; i < sys.steps.size(); ++i)
            steps.push_back(Json{{"kernel_sigma_closed", sys.level_sigma_closed[i + 1]},
                                 {"quotient_hausdorff", sys.steps[i].quotient_hausdorff},
                                 {"quotient_topological", sys.steps[i].quotient_topological},
                                 {"action_jointly_continuous", sys.steps[i].action_jointly_continuous}});
        Meas constructed = construct_haar(r, sys);
        bool agrees = radon_equal(constructed, solver.measure);
        all_agree = all_agree && agrees;
        systems.push_back(Json{{"chain", std::move(chain)},
                               {"certificates", std::move(steps)},
                               {"constructed", meas_to_json(constructed)},
                               {"agrees_with_solver", agrees}});
    }
    Json out{{"id", r.id()},
             {"mode", mode_name},
             {"systems", std::move(systems)},
             {"solver", Json{{"measure", meas_to_json(solver.measure)},
                             {"uniqueness_dim", solver.uniqueness_dim}}}};
    std::cout << out.dump(2) << "\n";
    return all_agree ? 0 : 1;
}

std::string sanitized(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

int cmd_enumerate(int max_order, const std::string& out_dir) {
    auto instances = enumerate_instances(max_order);
    Json files = Json::array();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        int subgroup_idx = 0;
        std::string last_group;
        for (const RtGroup& r : instances) {
            if (r.group.name != last_group) {
                last_group = r.group.name;
                subgroup_idx = 0;
            }
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%03d_%s_%02d.json", r.order(), sanitized(r.group.name).c_str(),
                          subgroup_idx++);
            fs::path file = fs::path(out_dir) / buf;
            std::ofstream o(file);
            if (!o) throw Error("cannot write " + file.string());
            o << instance_to_json(r).dump(2) << "\n";
            files.push_back(file.string());
        }
    }
    std::cout << Json{{"count", instances.size()}, {"files", std::move(files)}}.dump(2) << "\n";
    return 0;
}

int cmd_make_schreier(const std::string& base, const std::vector<long long>& auts,
                      const std::string& out_path) {
    if (base.size() < 2 || (base[0] != 'z' && base[0] != 'Z'))
        throw Error("base must be zN for a cyclic group");
    int n = std::stoi(base.substr(1));
    if (n < 1 || n > kMaxSubgroupOrder) throw Error("base order out of range");
    std::vector<std::vector<int>> perms;
    for (long long u : auts) {
        std::vector<int> p(n);
        for (int x = 0; x < n; ++x) p[x] = static_cast<int>(((u * x) % n + n) % n);
        perms.push_back(std::move(p));
    }
    SchreierSpec spec{cyclic_group(n), std::move(perms),
                      "Sch" + std::to_string(n) + "x" + std::to_string(auts.size())};
    GroupTable g = schreier_product(spec);
    Json j = group_to_json(g);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream o(out_path);
        if (!o) throw Error("cannot write " + out_path);
        o << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, int max_order, const std::vector<std::string>& fixture_paths,
               const std::string& out_path) {
    verify::VerificationReport rep;
    if (fixture_paths.empty()) {
        rep = verify::run_suite_on_catalog(suite, max_order);
    } else {
        std::vector<verify::SuiteInput> inputs;
        for (const std::string& p : fixture_paths) {
            InstanceFile f = load_instance(p);
            inputs.push_back({std::move(f.rtg), std::move(f.claimed_sigma), std::move(f.claimed_ng)});
        }
        rep = verify::run_suite(suite, std::move(inputs));
        rep.max_order = max_order;
    }
    std::string payload = verify::report_to_json(rep).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream o(out_path);
        if (!o) throw Error("cannot write " + out_path);
        o << payload;
    }
    // timing lives in the envelope on stderr, outside the deterministic payload
    std::cerr << "suite=" << suite << " instances=" << rep.instances.size() << " pass=" << rep.pass
              << " fail=" << rep.fail << " degenerate-pass=" << rep.degenerate
              << " diagnostic=" << rep.diagnostic << " timing_ms=" << rep.total_ms << "\n";
    return rep.fail == 0 ? 0 : 1;
}

int cmd_report(const std::string& format, const std::string& input_path, const std::string& out_path) {
    Json in;
    if (input_path.empty() || input_path == "-") {
        std::cin >> in;
    } else {
        in = load_json(input_path);
    }
    std::string payload = format == "csv" ? verify::report_to_csv(in) : in.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream o(out_path);
        if (!o) throw Error("cannot write " + out_path);
        o << payload;
        o.flush();
        if (!o.good()) throw Error("failed writing " + out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite right topological group laboratory"};
    app.require_subcommand(1);

    std::string instance_path, mode = "relaxed", out_path, suite = "all", format = "json", input_path;
    std::string base;
    std::vector<long long> auts;
    std::vector<std::string> fixtures;
    int max_order = kDefaultEnumBound;
    std::uint64_t seed = 0;
    bool with_functions = false, pretty = false;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one instance");
    analyze->add_option("instance", instance_path, "instance JSON file")->required();
    analyze->add_flag("--functions", with_functions, "include function-space dimensions");
    analyze->add_flag("--pretty", pretty, "render the topologies as text");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run theorem suites");
    verify_cmd->add_option("--suite", suite, "all|sigma|functions|measures|haar")
        ->check(CLI::IsMember({"all", "sigma", "functions", "measures", "haar"}));
    verify_cmd->add_option("--max-order", max_order, "catalog bound");
    verify_cmd->add_option("--instances", fixtures, "instance/fixture JSON files instead of the catalog");
    verify_cmd->add_option("--out", out_path, "write the report payload to a file");

    CLI::App* enumerate = app.add_subcommand("enumerate", "emit catalog instances");
    enumerate->add_option("--max-order", max_order, "catalog bound");
    enumerate->add_option("--out", out_path, "output directory");

    CLI::App* haar = app.add_subcommand("haar", "normal systems and the constructed Haar measure");
    haar->add_option("instance", instance_path, "instance JSON file")->required();
    haar->add_option("--mode", mode, "strict|relaxed")->check(CLI::IsMember({"strict", "relaxed"}));

    CLI::App* measures = app.add_subcommand("measures", "measure algebra dimensions and Haar");
    measures->add_option("instance", instance_path, "instance JSON file")->required();

    CLI::App* schreier = app.add_subcommand("make-schreier", "build a Schreier product group");
    schreier->add_option("--base", base, "base group, zN")->required();
    schreier->add_option("--auts", auts, "multiplier automorphisms of the base")->required();
    schreier->add_option("--out", out_path, "output file");

    CLI::App* report = app.add_subcommand("report", "convert a verify report");
    report->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    report->add_option("--out", out_path, "output file");
    report->add_option("input", input_path, "report JSON file (default: stdin)");

    CLI::App* random_cmd = app.add_subcommand("random", "print a seeded random instance");
    random_cmd->add_option("--seed", seed, "64-bit seed");
    random_cmd->add_option("--max-order", max_order, "catalog bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(instance_path, with_functions, pretty);
        if (*verify_cmd) return cmd_verify(suite, max_order, fixtures, out_path);
        if (*enumerate) return cmd_enumerate(max_order, out_path);
        if (*haar) return cmd_haar(instance_path, mode);
        if (*measures) return cmd_measures(instance_path);
        if (*schreier) return cmd_make_schreier(base, auts, out_path);
        if (*report) return cmd_report(format, input_path, out_path);
        if (*random_cmd) {
            std::cout << instance_to_json(random_instance(seed, max_order)).dump(2) << "\n";
            return 0;
        }
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InternalCheckFailure& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
