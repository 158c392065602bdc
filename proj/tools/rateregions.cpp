#include "rr/io.hpp"
#include "rr/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rr;
using nlohmann::json;

namespace {

enum Exit { OK = 0, CHECK_FAILED = 1, USAGE = 2, IO = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write " + path);
}

struct ScenarioArgs {
    std::vector<double> symmetric;
    double phase = 0;
    std::string file;

    void attach(CLI::App* app) {
        auto* sym = app->add_option("--symmetric", symmetric, "Symmetric network: power P, direct distance x, cooperation distance y")
                        ->expected(3);
        auto* f = app->add_option("--scenario", file, "Scenario JSON file");
        sym->excludes(f);
        app->add_option("--phase", phase, "Phase of the interfering gains (symmetric network), radians")->needs(sym);
    }
    bool given() const { return !symmetric.empty() || !file.empty(); }
    GaussianScenario get() const {
        if (!symmetric.empty()) return symmetric_network(symmetric[0], symmetric[1], symmetric[2], phase);
        if (file.empty()) throw UsageError("one of --symmetric or --scenario is required");
        json j;
        try {
            j = json::parse(read_file(file));
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(file + ": " + e.what());
        }
        return scenario_from_json(j);
    }
};

struct SweepArgs {
    SweepSpec spec;
    bool keep_flagged = false;
    bool no_face = false;

    void attach(CLI::App* app) {
        app->add_option("--units", spec.units, "Lattice resolution per user")->check(CLI::PositiveNumber);
        app->add_option("--refinements", spec.refinements, "Local refinements (support directions)")->check(CLI::NonNegativeNumber);
        app->add_option("--max-iterations", spec.max_iterations, "Iterations per refinement")->check(CLI::NonNegativeNumber);
        app->add_option("--seed", spec.seed, "Seed for the refinement start");
        app->add_option("--threads", spec.threads, "Worker threads (0: automatic, capped by RATE_REGIONS_THREADS)");
        app->add_flag("--keep-flagged", keep_flagged, "Keep the bounds that are removable only over the union");
        app->add_flag("--no-face", no_face, "Do not add the no-feedback face to feedback sweeps");
    }
    SweepSpec get() const {
        SweepSpec s = spec;
        s.drop_flagged = !keep_flagged;
        s.include_face = !no_face;
        return s;
    }
};

std::string output_format(const std::string& format, const std::string& out) {
    if (!format.empty()) return format;
    return out.size() >= 5 && out.compare(out.size() - 5, 5, ".json") == 0 ? "json" : "csv";
}

void print_metrics(const std::string& name, const RatePolygon& p, std::ostream& os) {
    if (p.empty()) return;
    RegionMetrics m = metrics(p);
    os << name << ": max_r1 " << m.max_r1 << ", max_r2 " << m.max_r2 << ", max_sum " << m.max_sum
       << ", symmetric_rate " << m.symmetric_rate << ", vertices " << p.vertices.size() << "\n";
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        for (std::string s; std::getline(ss, s, ',');)
            if (!s.empty()) out.push_back(s);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achievable rate regions for the interference channel with generalized feedback"};
    app.require_subcommand(1);

    // region
    auto* region = app.add_subcommand("region", "Sweep one region template and write its frontier");
    ScenarioArgs region_scn;
    SweepArgs region_sweep;
    std::string region_template = "sup", region_out, region_format;
    region_scn.attach(region);
    region_sweep.attach(region);
    region->add_option("--template", region_template, "hk, sup or ext");
    region->add_option("--out", region_out, "Output file (default: stdout)");
    region->add_option("--format", region_format, "csv or json (default: from the file extension)")
        ->check(CLI::IsMember({"csv", "json"}));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Sweep several templates and compare them");
    ScenarioArgs sweep_scn;
    SweepArgs sweep_args;
    std::vector<std::string> sweep_templates{"hk", "sup"};
    std::string sweep_out, sweep_format;
    sweep_scn.attach(sweep);
    sweep_args.attach(sweep);
    sweep->add_option("--templates", sweep_templates, "Comma-separated templates (default: hk,sup)");
    sweep->add_option("--out", sweep_out, "Output file (default: stdout)");
    sweep->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "Run the symbolic and numeric checks");
    std::string verify_id = "all", verify_json;
    VerifyOptions vopt;
    ScenarioArgs verify_scn;
    verify->add_option("check", verify_id, "all, or one of: " + [] {
        std::string s;
        for (const auto& id : check_ids()) s += (s.empty() ? "" : ", ") + id;
        return s;
    }());
    verify->add_option("--seed", vopt.seed, "Seed for the random draws");
    verify->add_option("--trials", vopt.trials, "Splits per scenario for appendixA")->check(CLI::PositiveNumber);
    verify->add_option("--draws", vopt.draws, "Draws for corollary1 and chain")->check(CLI::PositiveNumber);
    verify->add_option("--json", verify_json, "Write the JSON report here");
    verify_scn.attach(verify);

    // fm
    auto* fm = app.add_subcommand("fm", "Project a constraint file");
    std::string fm_in, fm_out;
    std::vector<std::string> fm_victims;
    bool fm_prune = false;
    fm->add_option("input", fm_in, "Constraint file (- for stdin)")->required();
    fm->add_option("--eliminate", fm_victims, "Comma-separated symbols to eliminate");
    fm->add_flag("--prune", fm_prune, "Remove redundant rows using the decoding-bound chains");
    fm->add_option("--out", fm_out, "Output file (default: stdout)");

    // templates
    auto* templates = app.add_subcommand("templates", "List or dump the constraint templates");
    templates->require_subcommand(1);
    templates->add_subcommand("list", "List template ids");
    auto* tdump = templates->add_subcommand("dump", "Dump one template in the constraint file format");
    std::string tdump_id, tdump_out;
    tdump->add_option("id", tdump_id, "Template id")->required();
    tdump->add_option("--out", tdump_out, "Output file (default: stdout)");

    // binning
    auto* binning = app.add_subcommand("binning", "Superposition-and-binning constraint system");
    binning->require_subcommand(1);
    std::string bin_variant = "full", bin_out;
    auto* bdump = binning->add_subcommand("dump", "Dump the full system");
    auto* belim = binning->add_subcommand("eliminate", "Eliminate with the binning rates at their lower bounds");
    for (auto* sc : {bdump, belim}) {
        sc->add_option("--variant", bin_variant, "full, no-vbin, no-zbin or two-step");
        sc->add_option("--out", bin_out, "Output file (default: stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return USAGE;
    }

    try {
        if (region->parsed()) {
            TemplateId id = parse_template(region_template);
            SweepStats st;
            RatePolygon p = sweep_union(region_scn.get(), id, region_sweep.get(), &st);
            if (output_format(region_format, region_out) == "json") {
                json j = frontier_json(p);
                j["template"] = template_name(id);
                j["scenario"] = to_json(region_scn.get());
                j["evaluations"] = st.evaluations;
                write_output(region_out, j.dump(2) + "\n");
            } else {
                write_output(region_out, frontier_csv(p));
            }
            print_metrics(template_name(id), p, region_out.empty() ? std::cerr : std::cout);
            return OK;
        }
        if (sweep->parsed()) {
            const GaussianScenario scn = sweep_scn.get();
            std::vector<std::pair<TemplateId, RatePolygon>> regions;
            for (const auto& name : split_list(sweep_templates)) {
                TemplateId id = parse_template(name);
                regions.emplace_back(id, sweep_union(scn, id, sweep_args.get()));
            }
            std::ostream& log = sweep_out.empty() ? std::cerr : std::cout;
            for (const auto& [id, p] : regions) print_metrics(template_name(id), p, log);
            if (output_format(sweep_format, sweep_out) == "json") {
                json j{{"scenario", to_json(scn)}, {"regions", json::object()}};
                for (const auto& [id, p] : regions) j["regions"][template_name(id)] = frontier_json(p);
                write_output(sweep_out, j.dump(2) + "\n");
            } else {
                std::string csv = "template,R1,R2\n";
                for (const auto& [id, p] : regions) {
                    std::string body = frontier_csv(p);
                    std::istringstream in(body.substr(body.find('\n') + 1));
                    for (std::string l; std::getline(in, l);) csv += template_name(id) + "," + l + "\n";
                }
                write_output(sweep_out, csv);
            }
            return OK;
        }
        if (verify->parsed()) {
            if (verify_scn.given()) vopt.scenario = verify_scn.get();
            std::vector<CheckReport> reports;
            if (verify_id == "all") {
                reports = run_all(vopt);
            } else {
                reports.push_back(run_check(verify_id, vopt));
            }
            bool ok = true;
            json j = json::array();
            for (const auto& r : reports) {
                ok = ok && r.pass;
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "\n";
                for (const auto& d : r.diagnostics) std::cout << "  " << d << "\n";
                j.push_back(to_json(r));
            }
            if (!verify_json.empty()) write_output(verify_json, j.dump(2) + "\n");
            return ok ? OK : CHECK_FAILED;
        }
        if (fm->parsed()) {
            std::string text;
            if (fm_in == "-") {
                std::ostringstream ss;
                ss << std::cin.rdbuf();
                text = ss.str();
            } else {
                text = read_file(fm_in);
            }
            LinearSystem s = parse_system(text);
            LinearSystem out = fm_eliminate(s, split_list(fm_victims));
            if (fm_prune) out = drop_redundant_symbolic(out, curated_facts());
            write_output(fm_out, format_system(out));
            return OK;
        }
        if (templates->parsed()) {
            if (tdump->parsed()) {
                write_output(tdump_out, format_system(build(parse_template(tdump_id))));
            } else {
                for (TemplateId id : all_templates())
                    std::cout << template_name(id) << "  (" << build(id).size() << " rows)\n";
            }
            return OK;
        }
        if (binning->parsed()) {
            BinningSystem sys = build_variant(parse_variant(bin_variant));
            if (bdump->parsed()) {
                write_output(bin_out, format_system(to_system(sys)));
            } else {
                BinningElimination el = binning_equality_eliminate(sys);
                std::string text = format_system(el.system) + "# bound families (R1, R2):";
                for (const auto& [a, b] : el.families) text += " (" + a.get_str() + "," + b.get_str() + ")";
                write_output(bin_out, text + "\n");
            }
            return OK;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return IO;
    } catch (const ParseError& e) {
        std::cerr << "error: " << fm_in << ": " << e.what() << "\n";
        return USAGE;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return CHECK_FAILED;
    }
    return USAGE;
}
