// Command-line front end: suite runner, slice maps, set lemmas, Weil relation
// checks, and report rendering. Exit codes: 0 all checks pass, 1 a check was
// falsified, 2 usage or cap error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xact/json_io.hpp"
#include "xact/slices.hpp"
#include "xact/verify/suites.hpp"
#include "xact/weil.hpp"

namespace {

using namespace xact;
using verify::Report;
using verify::SuiteConfig;
using verify::UsageError;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write output file: " + path);
    out << text;
    if (!out) throw UsageError("write failed: " + path);
}

void apply_config_file(SuiteConfig& cfg, const std::string& path) {
    Json j = read_json_file(path);
    if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
    if (j.contains("field")) cfg.field = j["field"].get<std::string>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("p")) cfg.p = j["p"].get<std::uint32_t>();
    if (j.contains("d")) cfg.d = j["d"].get<int>();
    if (j.contains("level")) {
        cfg.level_m = j["level"].value("m", cfg.level_m);
        cfg.level_k = j["level"].value("k", cfg.level_k);
    }
    if (j.contains("lambda_samples"))
        cfg.lambda_samples = j["lambda_samples"].get<std::vector<std::string>>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
}

int emit_report(const Report& report, const std::string& out_path,
                const std::string& md_path, bool quiet = false) {
    Json full = report.full_json();
    if (!out_path.empty()) write_text_file(out_path, full.dump(2) + "\n");
    if (!md_path.empty()) write_text_file(md_path, report.markdown_summary());
    if (!quiet) {
        for (const auto& r : report.results)
            std::cout << "[" << verify::status_name(r.status) << "] " << r.id << "\n";
        std::cout << "pass " << report.count(verify::CheckResult::Status::Pass) << ", fail "
                  << report.count(verify::CheckResult::Status::Fail) << ", skipped "
                  << report.count(verify::CheckResult::Status::Skipped) << " ("
                  << report.total_ms << " ms)\n";
        for (const auto& r : report.results)
            if (r.status == verify::CheckResult::Status::Fail)
                std::cout << "witness[" << r.id << "]: " << r.witness.dump() << "\n";
    }
    return report.exit_code();
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

BilinearFormB parse_form(const std::string& form, int d) {
    if (form == "hyperbolic") {
        if (d % 2 != 0) throw UsageError("hyperbolic form needs even d");
        return BilinearFormB::hyperbolic(static_cast<std::size_t>(d / 2));
    }
    if (form.rfind("diag:", 0) == 0) {
        std::vector<Rat> entries;
        for (const auto& tok : split_csv(form.substr(5)))
            entries.push_back(Rat::from_string(tok));
        if (static_cast<int>(entries.size()) != d)
            throw UsageError("diag form must list exactly d entries");
        return BilinearFormB::diagonal(entries);
    }
    throw UsageError("unknown form: " + form + " (use hyperbolic or diag:a,b,...)");
}

int cmd_verify(const std::string& suite, SuiteConfig cfg, const std::string& out,
               const std::string& md) {
    cfg.suite = suite;
    Report report = verify::run_suite(cfg);
    return emit_report(report, out, md);
}

int cmd_sets(SuiteConfig cfg, const std::string& lemma, const std::string& out) {
    cfg.suite = lemma;
    auto check = verify::sets_lemma_check(cfg);
    Report report = verify::run_checks(cfg, {check});
    return emit_report(report, out, "");
}

int cmd_maps(const std::string& op, const std::string& in_path, const std::string& out_path,
             const std::string& lambda) {
    Json in = read_json_file(in_path);
    Json out;
    if (op == "trace-slice") {
        out = mat_to_json(trace_slice(qmat_from_json(in)));
    } else if (op == "block-slice") {
        Mat<Rat> b = qmat_from_json(in);
        PointX<Rat> pt = block_slice(b);
        out = point_to_json(pt);
        out["lambda"] = rat_to_json(b(b.rows() - 1, b.cols() - 1));
    } else if (op == "block-unslice") {
        PointX<Rat> pt = qpoint_from_json(in);
        Rat lam = lambda.empty() ? (in.contains("lambda") ? rat_from_json(in["lambda"]) : Rat())
                                 : Rat::from_string(lambda);
        out = mat_to_json(block_unslice(pt, lam));
    } else if (op == "profile") {
        out = profile_to_json(nilpotent_profile(qmat_from_json(in)));
    } else {
        throw UsageError("unknown map op: " + op);
    }
    if (out_path.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_text_file(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_weil(const SuiteConfig& cfg, const std::string& form, const std::string& relation,
             const std::string& report_path) {
    CosetSpace sp(cfg.p, cfg.d, Level{cfg.level_m, cfg.level_k});
    BilinearFormB b = parse_form(form, cfg.d);
    std::vector<verify::Check> checks;
    auto add_projective = [&](std::string id, std::vector<GenTok> w1, std::vector<GenTok> w2) {
        checks.push_back(verify::Check{
            std::move(id), [&b, &sp, w1, w2](Rng&) -> verify::CheckResult {
                auto v = projective_check(w1, w2, b, sp);
                if (!v.holds())
                    return verify::CheckResult::fail(
                        "", Json{{"witness", v.witness}, {"ratio", cyclo_to_json(v.ratio)}});
                return verify::CheckResult::pass("");
            }});
    };
    if (relation == "braid") {
        add_projective("weil/braid", {GenTok::j()},
                       {GenTok::nbar(Rat(1)), GenTok::n(Rat(-1)), GenTok::nbar(Rat(1))});
    } else if (relation == "conj-unipotent") {
        for (long long t : {1ll, 2ll})
            add_projective("weil/conj-unipotent/t" + std::to_string(t),
                           {GenTok::j_inv(), GenTok::nbar(Rat(t)), GenTok::j()},
                           sl2_decompose(sl2_n(Rat(-t))));
    } else if (relation == "j4") {
        std::vector<GenTok> j4;
        for (int r = 0; r < 4; ++r) {
            j4.push_back(GenTok::nbar(Rat(1)));
            j4.push_back(GenTok::n(Rat(-1)));
            j4.push_back(GenTok::nbar(Rat(1)));
        }
        add_projective("weil/j4", j4, {});
    } else {
        throw UsageError("unknown relation: " + relation);
    }
    Report report = verify::run_checks(cfg, checks);
    return emit_report(report, report_path, "");
}

int cmd_report(const std::string& in_path, const std::string& md_path) {
    Json j = read_json_file(in_path);
    const Json& body = j.contains("body") ? j["body"] : j;
    std::string md = "# " + body.value("suite", std::string("report")) + "\n\n";
    md += "| check | status |\n|---|---|\n";
    for (const auto& r : body.at("results"))
        md += "| " + r.at("id").get<std::string>() + " | " + r.at("status").get<std::string>() +
              " |\n";
    const Json& s = body.at("summary");
    md += "\n**pass " + s.at("pass").dump() + ", fail " + s.at("fail").dump() + ", skipped " +
          s.at("skipped").dump() + "**\n";
    for (const auto& r : body.at("results"))
        if (r.at("status").get<std::string>() == "fail")
            md += "\n- witness for `" + r.at("id").get<std::string>() + "`: `" +
                  r.at("witness").dump() + "`\n";
    if (md_path.empty())
        std::cout << md;
    else
        write_text_file(md_path, md);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suites for the Gtilde action, nilpotent orbits, "
                 "p-adic Fourier analysis, and Weil-representation relations"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string out_path, md_path, config_path;

    auto* verify_cmd = app.add_subcommand("verify", "run a registered suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "suite name or 'all'")->required();
    verify_cmd->add_option("--seed", cfg.seed, "suite seed");
    verify_cmd->add_option("--workers", cfg.workers, "worker pool size (VERIFY_WORKERS)");
    verify_cmd->add_option("--out", out_path, "write the JSON report here");
    verify_cmd->add_option("--md", md_path, "write a markdown summary here");
    verify_cmd->add_option("--config", config_path, "JSON config file");

    auto* sets_cmd = app.add_subcommand("sets", "set-containment lemma checks");
    std::string lemma = "linalg";
    sets_cmd->add_option("--lemma", lemma, "linalg|qdirectsum|raqa|tangent")->required();
    sets_cmd->add_option("--field", cfg.field, "Q|gf2|gf3|gf5 (any gf<q>)");
    sets_cmd->add_option("--n", cfg.n, "dimension bound");
    std::string lambda_csv;
    sets_cmd->add_option("--lambda-samples", lambda_csv, "comma-separated rational samples");
    sets_cmd->add_option("--seed", cfg.seed, "seed for randomized fields");
    sets_cmd->add_option("--out", out_path, "write the JSON verdict here");

    auto* maps_cmd = app.add_subcommand("maps", "trace/block slice maps on JSON matrices");
    std::string map_op, map_in, map_out, map_lambda;
    maps_cmd->add_option("op", map_op, "trace-slice|block-slice|block-unslice|profile")
        ->required();
    maps_cmd->add_option("--in", map_in, "input JSON file")->required();
    maps_cmd->add_option("--out", map_out, "output JSON file (stdout if omitted)");
    maps_cmd->add_option("--lambda", map_lambda, "corner value for block-unslice");

    auto* weil_cmd = app.add_subcommand("weil", "Weil-representation relation checks");
    std::string form = "hyperbolic", relation = "conj-unipotent", weil_level = "1,1";
    weil_cmd->add_option("--p", cfg.p, "residue prime");
    weil_cmd->add_option("--d", cfg.d, "dimension of W");
    weil_cmd->add_option("--level", weil_level, "level as m,k");
    weil_cmd->add_option("--form", form, "hyperbolic|diag:a,b,...");
    weil_cmd->add_option("--relation", relation, "braid|conj-unipotent|j4");
    weil_cmd->add_option("--report", out_path, "write the JSON report here");

    auto* report_cmd = app.add_subcommand("report", "render a report as markdown");
    std::string report_in;
    report_cmd->add_option("--in", report_in, "report JSON file")->required();
    report_cmd->add_option("--md", md_path, "markdown output (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            if (!config_path.empty()) apply_config_file(cfg, config_path);
            return cmd_verify(suite, cfg, out_path, md_path);
        }
        if (sets_cmd->parsed()) {
            if (!lambda_csv.empty()) cfg.lambda_samples = split_csv(lambda_csv);
            return cmd_sets(cfg, lemma, out_path);
        }
        if (maps_cmd->parsed()) return cmd_maps(map_op, map_in, map_out, map_lambda);
        if (weil_cmd->parsed()) {
            auto parts = split_csv(weil_level);
            if (parts.size() != 2) throw UsageError("--level expects m,k");
            cfg.level_m = std::stoi(parts[0]);
            cfg.level_k = std::stoi(parts[1]);
            return cmd_weil(cfg, form, relation, out_path);
        }
        if (report_cmd->parsed()) return cmd_report(report_in, md_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
