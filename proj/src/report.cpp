#include "chips/report.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include "json.hpp"

#include "chips/error.hpp"
#include "chips/greedy.hpp"
#include "chips/infer.hpp"
#include "chips/io.hpp"
#include "chips/kernels.hpp"
#include "chips/metrics.hpp"
#include "chips/rng.hpp"
#include "chips/synth.hpp"

namespace chips {

namespace {

constexpr const char* kComponent = "cli";

using json = nlohmann::ordered_json;

json subpartition_json(const Subpartition& sub) {
    json items = json::array();
    json assignment = json::array();
    for (std::int32_t pos = 0; pos < sub.size(); ++pos) {
        items.push_back(sub.item(pos) + 1);
        assignment.push_back(sub.cluster_of_pos(pos));
    }
    return json{{"items", std::move(items)}, {"assignment", std::move(assignment)}};
}

}  // namespace

std::string run_report(const RunConfig& cfg) {
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw_input(kComponent, "gamma must lie strictly between 0 and 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw_input(kComponent, "alpha must lie strictly between 0 and 1");
    if (!kern::set_active_kernels(cfg.kernel))
        throw_input(kComponent, "kernel variant '" + cfg.kernel + "' is not available");
    if (!cfg.synth && cfg.input_path.empty())
        throw_input(kComponent, "either an input file or the synthetic preset is required");
    if (cfg.synth && !cfg.input_path.empty())
        throw_input(kComponent, "the synthetic preset replaces the input file");
    if (cfg.synth && !cfg.params_path.empty())
        throw_input(kComponent, "the synthetic preset generates its own parameters");

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto out_path = [&](const std::string& name) {
        return (fs::path(cfg.output_dir) / name).string();
    };

    // --- inputs ---------------------------------------------------------
    std::optional<DrawSet> draws;
    ParamTable params;
    std::string source;
    if (cfg.synth) {
        const MixtureSpec spec = benchmark_spec(cfg.synth_sigma2);
        const SyntheticData data = generate_data(spec, cfg.seed);
        draws = sample_z_draws(data.points, spec, cfg.synth_draws, cfg.seed);
        params = sample_mean_params(data.points, *draws, cfg.synth_sigma2, cfg.seed);
        write_matrix_csv(data.points, "x,y", out_path("synth_data.csv"));
        write_draws_csv(*draws, out_path("synth_draws.csv"));
        source = "synthetic(sigma2=" + std::to_string(cfg.synth_sigma2) + ")";
    } else {
        LoadedDraws loaded = ingest_draws(cfg.input_path);
        if (!cfg.params_path.empty()) params = ingest_params(cfg.params_path, loaded);
        draws = std::move(loaded.draws);
        source = cfg.input_path;
    }
    const DrawSet& ds = *draws;
    const std::int32_t n = ds.item_count();
    const std::int32_t n_runs = cfg.n_runs > 0 ? cfg.n_runs : std::min<std::int32_t>(n, 100);

    // --- search and summaries --------------------------------------------
    const std::vector<std::int32_t> starts =
        sample_starts(n, n_runs, derive_seed(cfg.seed, SeedStream::starts, 0));
    const ChipsResult result = run_chips(ds, cfg.gamma, starts, cfg.seed, cfg.threads);
    const ChipsRegion& region = result.region;
    const ChipsCurve curve = chips_curve(result.traces);
    const std::vector<UnitUncertainty> units = unit_uncertainty(ds, region, cfg.threads);
    const Partition estimate =
        complete_partition(ds, region, cfg.loss, cfg.restarts, cfg.seed);

    json report;
    report["source"] = source;
    report["n"] = n;
    report["draws"] = ds.draw_count();
    report["gamma"] = cfg.gamma;
    report["alpha"] = cfg.alpha;
    report["loss"] = cfg.loss == Loss::binder ? "binder" : "vi";
    report["n_runs"] = n_runs;
    report["seed"] = cfg.seed;
    report["kernel"] = kern::active_kernels().name;

    json region_json;
    region_json["n0"] = region.n0;
    region_json["k0"] = region.subpartition.cluster_count();
    region_json["probability"] = region.probability;
    region_json["count"] = region.count;
    region_json["subpartition"] = subpartition_json(region.subpartition);
    region_json["trace_start"] = result.traces[static_cast<std::size_t>(region.trace_id)].start + 1;
    region_json["selection_ties"] = result.selection_ties;
    report["region"] = std::move(region_json);

    report["auchips"] = curve.auchips;

    json cluster_probs = json::array();
    for (std::int32_t j = 1; j <= region.subpartition.cluster_count(); ++j)
        cluster_probs.push_back(
            cluster_probability(ds, region.subpartition.cluster_members(j)));
    report["cluster_probabilities"] = std::move(cluster_probs);

    json units_json = json::array();
    for (const UnitUncertainty& u : units) {
        units_json.push_back(json{{"item", u.item + 1},
                                  {"q_max", u.q_max},
                                  {"drop", u.drop},
                                  {"best_placement", u.best_placement},
                                  {"placement_ties", u.placement_ties}});
    }
    report["unit_uncertainty"] = std::move(units_json);

    report["point_estimate"] = estimate.labels();

    if (!params.empty()) {
        json regions_json = json::array();
        const ConsistencyMask mask = mask_for(ds, region.subpartition);
        for (std::int32_t j = 1; j <= region.subpartition.cluster_count(); ++j) {
            const std::vector<std::vector<double>> samples =
                conditional_samples(ds, params, region, j);
            ClusterCredibleRegion cr = credible_region(samples, cfg.alpha, region.probability);
            cr.cluster_index = j;

            std::string header = "draw";
            for (std::int32_t d = 1; d <= params.dim(); ++d)
                header += ",theta_" + std::to_string(d);
            std::vector<std::vector<double>> csv_rows;
            csv_rows.reserve(samples.size());
            std::size_t next = 0;
            for (std::int64_t m = 0; m < ds.draw_count(); ++m) {
                if (!mask.bits[static_cast<std::size_t>(m)]) continue;
                std::vector<double> row{static_cast<double>(m + 1)};
                row.insert(row.end(), samples[next].begin(), samples[next].end());
                csv_rows.push_back(std::move(row));
                ++next;
            }
            write_matrix_csv(csv_rows, header,
                             out_path("theta_samples_" + std::to_string(j) + ".csv"));

            json rj;
            rj["cluster"] = j;
            rj["samples"] = samples.size();
            rj["alpha"] = cfg.alpha;
            rj["joint_bound"] = cr.joint_bound;
            rj["interval"] = json{{"lower", cr.lower}, {"upper", cr.upper}};
            rj["ellipsoid"] = json{{"center", cr.center},
                                   {"covariance", cr.covariance},
                                   {"radius2", cr.radius2}};
            rj["degenerate"] = cr.degenerate;
            regions_json.push_back(std::move(rj));
        }
        report["credible_regions"] = std::move(regions_json);
    }

    if (cfg.stability_repeats >= 2) {
        const StabilityReport stability =
            stability_report(ds, cfg.gamma, n_runs, cfg.stability_repeats,
                             derive_seed(cfg.seed, SeedStream::repeat, 0), cfg.threads);
        json sj;
        sj["repeats"] = stability.repeats;
        sj["n_runs"] = stability.n_runs;
        sj["distinct_subpartitions"] = stability.distinct_subpartitions;
        sj["any_selection_ties"] = stability.any_selection_ties;
        sj["auchips_mean"] = stability.auchips_mean;
        sj["auchips_sd"] = stability.auchips_sd;
        sj["auchips_min"] = stability.auchips_min;
        sj["auchips_max"] = stability.auchips_max;
        json runs = json::array();
        for (const StabilityRepeat& run : stability.runs) {
            runs.push_back(json{{"n0", run.n0},
                                {"probability", run.probability},
                                {"auchips", run.auchips},
                                {"selection_ties", run.selection_ties}});
        }
        sj["runs"] = std::move(runs);
        report["stability"] = std::move(sj);
    }

    // --- companion CSV files ----------------------------------------------
    {
        std::vector<std::vector<double>> curve_rows;
        curve_rows.reserve(curve.values.size());
        for (std::size_t l = 0; l < curve.values.size(); ++l)
            curve_rows.push_back({static_cast<double>(l + 1), curve.values[l]});
        write_matrix_csv(curve_rows, "size,p_max", out_path("chips_curve.csv"));
    }
    {
        std::vector<std::vector<double>> unit_rows;
        unit_rows.reserve(units.size());
        for (const UnitUncertainty& u : units)
            unit_rows.push_back({static_cast<double>(u.item + 1), u.q_max, u.drop,
                                 static_cast<double>(u.best_placement),
                                 static_cast<double>(u.placement_ties)});
        write_matrix_csv(unit_rows, "item,q_max,drop,best_placement,placement_ties",
                         out_path("unit_uncertainty.csv"));
    }

    const std::string report_path = out_path("report.json");
    std::ofstream out(report_path);
    if (!out) throw_input(kComponent, "cannot write '" + report_path + "'");
    out << report.dump(2) << '\n';
    return report_path;
}

}  // namespace chips
