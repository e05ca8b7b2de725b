#include "roc2/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "roc2/anderson.hpp"
#include "roc2/chart.hpp"
#include "roc2/io.hpp"
#include "roc2/picard.hpp"

namespace roc2 {

namespace {

std::string out_path(const std::string& file)
{
    if (file.empty() || file.front() == '/')
        return file;
    const char* dir = std::getenv("ROC2_OUT_DIR");
    if (!dir || !*dir)
        return file;
    return std::string(dir) + "/" + file;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream os(out_path(path), std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file " + path);
    os << content;
}

bool parse_range(const std::string& text, long long& lo, long long& hi)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        return false;
    lo = std::stoll(text.substr(0, colon));
    hi = std::stoll(text.substr(colon + 1));
    return lo <= hi;
}

Window scenario_window(const Scenario& sc, long long n, long long s_max)
{
    Window w;
    w.a_min = -n;
    w.a_max = n;
    w.b_min = -n;
    w.b_max = n;
    w.s_max = s_max;
    if (sc.has_dbar)
        w.gen_caps["Dbar"] = 4;
    return w;
}

int emit_report(const Report& rep, const std::string& out, bool to_stdout = true)
{
    json j = report_to_json(rep);
    std::string text = j.dump(2) + "\n";
    if (!out.empty())
        write_file(out, text);
    if (to_stdout)
        std::cout << text;
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

Report engine_soundness(const SoundnessOptions& opt)
{
    Report rep;
    std::mt19937_64 rng(opt.seed);

    // d after d vanishes on sampled monomials, every scenario
    for (const auto& name : scenario_names()) {
        Scenario sc = build_scenario(name);
        const MonomialAlgebra& A = sc.algebra;
        size_t n = A.size();
        long long failures = 0, skipped = 0;
        std::uniform_int_distribution<int> exp_dist(-8, 8);
        for (int i = 0; i < opt.dd_samples; ++i) {
            Monomial m(n, 0);
            for (size_t g = 0; g < n; ++g) {
                int e = exp_dist(rng);
                if (!A.gens()[g].invertible && e < 0)
                    e = -e;
                m[g] = e;
            }
            for (const auto& d : sc.differentials) {
                auto first = leibniz_extend(A, d, m);
                if (!first) {
                    ++skipped;  // outside the derivation's domain
                    continue;
                }
                Element second;
                bool defined = true;
                for (const auto& [mm, c] : first->terms) {
                    auto v = leibniz_extend(A, d, mm);
                    if (!v) {
                        defined = (c % 2 == 0);
                        if (!defined)
                            break;
                        continue;
                    }
                    second = A.add(second, A.scale(c, *v));
                }
                if (defined && !second.is_zero())
                    ++failures;
            }
        }
        rep.add("d after d vanishes on samples (" + name + ")", failures == 0,
                "samples=" + std::to_string(opt.dd_samples) +
                    " skipped=" + std::to_string(skipped));
    }

    // Smith transforms: U M V = D, det(U), det(V) = +-1, divisibility chain
    std::uniform_int_distribution<int> dim_dist(1, 8), ent_dist(-3, 3);
    long long bad = 0;
    for (int i = 0; i < opt.snf_samples; ++i) {
        size_t r = dim_dist(rng), c = dim_dist(rng);
        IntMat m(r, IntVec(c, 0));
        for (auto& row : m)
            for (auto& e : row)
                e = ent_dist(rng);
        SmithResult s = smith_normal_form(m);
        IntMat check = mat_mul(mat_mul(s.u, m), s.v);
        bool ok = check == s.d;
        ok = ok && std::llabs(mat_det(s.u)) == 1 && std::llabs(mat_det(s.v)) == 1;
        for (size_t k = 0; k + 1 < std::min(r, c) && ok; ++k)
            if (s.d[k + 1][k + 1] != 0 && s.d[k][k] != 0)
                ok = ok && (s.d[k + 1][k + 1] % s.d[k][k] == 0);
        for (size_t k = 0; k < std::min(r, c) && ok; ++k)
            for (size_t l = 0; l < std::min(r, c); ++l)
                if (k != l && s.d[k][l] != 0)
                    ok = false;
        if (!ok)
            ++bad;
    }
    rep.add("Smith normal form: U M V = D on random matrices", bad == 0,
            "samples=" + std::to_string(opt.snf_samples));
    return rep;
}

int run_cli(const std::vector<std::string>& args)
{
    CLI::App app{"exact RO(C2)-graded spectral sequence engine"};
    app.require_subcommand(1);

    // ---- sseq ----
    auto* sseq_cmd = app.add_subcommand("sseq", "run or draw a spectral sequence");
    sseq_cmd->require_subcommand(1);
    std::string spec_file, out_file, scenario = "tmf13", stems = "-8:16", filts = "0:12";
    long long window_n = 16, s_max = 32;
    int r_max = 16;
    bool use_json = false;

    auto* sseq_run = sseq_cmd->add_subcommand("run", "compute the stable page");
    sseq_run->add_option("--spec", spec_file, "spectral sequence spec (JSON)");
    sseq_run->add_option("--scenario", scenario, "built-in scenario name");
    sseq_run->add_option("--window", window_n, "degree window |a|,|b| <= N");
    sseq_run->add_option("--smax", s_max, "filtration bound");
    sseq_run->add_option("--rmax", r_max, "largest differential checked");
    sseq_run->add_option("--out", out_file, "write the page as JSON");
    sseq_run->add_flag("--json", use_json, "print JSON to stdout");

    auto* sseq_chart = sseq_cmd->add_subcommand("chart", "render an Adams chart");
    sseq_chart->add_option("--scenario", scenario, "built-in scenario name");
    std::string page_sel = "e2";
    sseq_chart->add_option("--page", page_sel, "e2 or einf");
    sseq_chart->add_option("--stems", stems, "stem range lo:hi");
    sseq_chart->add_option("--filtrations", filts, "filtration range lo:hi");
    sseq_chart->add_option("--out", out_file, "output SVG file");

    // ---- tmf13 ----
    auto* tmf_cmd = app.add_subcommand("tmf13", "verification against the known answers");
    tmf_cmd->require_subcommand(1);
    auto* tmf_verify = tmf_cmd->add_subcommand("verify", "presentation, evenness, eta/nu");
    long long verify_window = 40;
    tmf_verify->add_option("--scenario", scenario, "scenario name");
    tmf_verify->add_option("--window", verify_window, "degree window");
    tmf_verify->add_option("--out", out_file, "write the JSON report");

    // ---- slice ----
    auto* slice_cmd = app.add_subcommand("slice", "slice spectral sequence charts");
    slice_cmd->require_subcommand(1);
    auto* slice_chart_cmd = slice_cmd->add_subcommand("chart", "chart from the Bredon formulas");
    std::string slice_stems = "-24:24";
    std::string json_out;
    slice_chart_cmd->add_option("--stems", slice_stems, "stem range lo:hi");
    slice_chart_cmd->add_option("--out", out_file, "output SVG file");
    slice_chart_cmd->add_option("--json-out", json_out, "also dump the chart as JSON");

    // ---- anderson ----
    auto* anderson_cmd = app.add_subcommand("anderson", "duality checks");
    anderson_cmd->require_subcommand(1);
    auto* anderson_check = anderson_cmd->add_subcommand("check", "pairings and dual cells");
    long long kmax = 30;
    anderson_check->add_option("--kmax", kmax, "largest pairing weight");
    anderson_check->add_option("--out", out_file, "write the JSON report");

    // ---- picard ----
    auto* picard_cmd = app.add_subcommand("picard", "Picard group pipeline");
    picard_cmd->require_subcommand(1);
    auto* picard_compute_cmd = picard_cmd->add_subcommand("compute", "compute one target");
    std::string target = "TMF13";
    picard_compute_cmd->add_option("--target", target,
                                   "TMF13 | Tmf13 | a1inv | a3inv | a1a3inv");
    picard_compute_cmd->add_option("--out", out_file, "write the JSON result");

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "aggregate verification");
    report_cmd->require_subcommand(1);
    auto* report_all = report_cmd->add_subcommand("all", "run every module check");
    unsigned long long seed = 1;
    long long report_window = 24;
    report_all->add_option("--window", report_window, "degree window for the page checks");
    report_all->add_option("--seed", seed, "seed for the sampled properties");
    report_all->add_option("--out", out_file, "write the JSON report");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    }
    catch (const CLI::ParseError& e) {
        CLI::App dummy;
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sseq_run->parsed()) {
            SseqSpec spec;
            if (!spec_file.empty()) {
                std::ifstream is(spec_file);
                if (!is)
                    throw std::runtime_error("cannot read " + spec_file);
                json j = json::parse(is);
                spec = sseq_spec_from_json(j);
            }
            else {
                Scenario sc = build_scenario(scenario);
                spec.algebra = sc.algebra;
                spec.differentials = sc.differentials;
                spec.window = scenario_window(sc, window_n, s_max);
            }
            RunResult run = run_to_stable(spec.algebra, spec.differentials, spec.window, r_max);
            json j = page_to_json(run.page, run.claim);
            j["unresolved"] = run.unresolved;
            std::string text = j.dump(2) + "\n";
            if (!out_file.empty())
                write_file(out_file, text);
            if (use_json || out_file.empty())
                std::cout << text;
            return run.unresolved.empty() ? 0 : 1;
        }
        if (sseq_chart->parsed()) {
            Scenario sc = build_scenario(scenario);
            ChartSpec cs;
            if (!parse_range(stems, cs.stem_min, cs.stem_max) ||
                !parse_range(filts, cs.s_min, cs.s_max))
                return 2;
            cs.title = scenario + " " + page_sel;
            long long n = std::max(std::llabs(cs.stem_min), std::llabs(cs.stem_max)) + 4;
            Window w = scenario_window(sc, n, cs.s_max + 18);
            std::string svg;
            if (page_sel == "e2") {
                Page page = initial_page(sc.algebra, w);
                svg = render_chart(cs, page);
            }
            else {
                RunResult run = run_to_stable(sc.algebra, sc.differentials, w);
                svg = render_chart(cs, run.page);
            }
            if (out_file.empty())
                std::cout << svg;
            else
                write_file(out_file, svg);
            return 0;
        }
        if (tmf_verify->parsed()) {
            Scenario sc = build_scenario(scenario);
            Window w = scenario_window(sc, verify_window, std::max<long long>(verify_window + 24, 64));
            RunResult run = run_to_stable(sc.algebra, sc.differentials, w);
            Report rep = verify_presentation(run);
            Report even = check_strongly_even(run, std::min<long long>(verify_window / 2, 20));
            Report chains = check_eta_nu_chains(run);
            for (auto& c : even.items)
                rep.items.push_back(c);
            for (auto& c : chains.items)
                rep.items.push_back(c);
            return emit_report(rep, out_file);
        }
        if (slice_chart_cmd->parsed()) {
            long long lo, hi;
            if (!parse_range(slice_stems, lo, hi))
                return 2;
            auto cells = slice_cells(2 * lo - 32, 2 * hi + 32);
            SliceChart chart = slice_e2(cells, lo, hi);
            ChartSpec cs;
            cs.stem_min = lo;
            cs.stem_max = hi;
            cs.s_min = -16;
            cs.s_max = 16;
            cs.title = "slice E2";
            std::vector<SliceChartCell> draw;
            json jcells = json::array();
            for (const auto& [key, e] : chart.entries) {
                draw.push_back({key.first, key.second, e.z_count + e.zstar_count, e.g_count});
                jcells.push_back({{"stem", key.first},
                                  {"s", key.second},
                                  {"group", e.fixed_group().str()},
                                  {"underlying_rank", e.underlying_rank()}});
            }
            std::string svg = render_slice_chart(cs, draw);
            if (out_file.empty())
                std::cout << svg;
            else
                write_file(out_file, svg);
            if (!json_out.empty())
                write_file(json_out, json(jcells).dump(2) + "\n");
            return 0;
        }
        if (anderson_check->parsed()) {
            json list = json::array();
            bool all = true;
            for (long long k = 0; k <= kmax; ++k) {
                bool ok = certify_perfect(serre_pairing(k));
                all = all && ok;
                list.push_back({{"k", k}, {"perfect", ok}});
            }
            Report rep = check_anderson(kmax, 40, 60);
            json j = {{"pairings", list}, {"checks", report_to_json(rep)}};
            std::string text = j.dump(2) + "\n";
            if (!out_file.empty())
                write_file(out_file, text);
            std::cout << text;
            return (all && rep.all_pass()) ? 0 : 1;
        }
        if (picard_compute_cmd->parsed()) {
            PicardResult r = picard_compute(target);
            std::string text = picard_result_to_json(r).dump(2) + "\n";
            if (!out_file.empty())
                write_file(out_file, text);
            std::cout << text;
            return 0;
        }
        if (report_all->parsed()) {
            Report rep;
            {
                Scenario sc = build_scenario("tmf13");
                Window w = scenario_window(sc, report_window, report_window + 24);
                RunResult run = run_to_stable(sc.algebra, sc.differentials, w);
                for (auto& c : verify_presentation(run).items)
                    rep.items.push_back(c);
                for (auto& c : check_strongly_even(run, report_window / 2).items)
                    rep.items.push_back(c);
                for (auto& c : check_eta_nu_chains(run).items)
                    rep.items.push_back(c);
            }
            for (auto& c : periodicity_check().items)
                rep.items.push_back(c);
            for (auto& c : check_near_rho(6).items)
                rep.items.push_back(c);
            for (auto& c : check_slice_chart(report_window).items)
                rep.items.push_back(c);
            for (auto& c : check_anderson(30, report_window, 40).items)
                rep.items.push_back(c);
            for (auto& c : check_picard().items)
                rep.items.push_back(c);
            SoundnessOptions opt;
            opt.seed = seed;
            opt.dd_samples = 2000;
            opt.snf_samples = 300;
            for (auto& c : engine_soundness(opt).items)
                rep.items.push_back(c);
            return emit_report(rep, out_file);
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace roc2
