// smeval: batch foreground-map evaluation, ranking, meta-measure
// protocols, GT perturbation and study-pair export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smeval/eval.hpp"
#include "smeval/image_io.hpp"
#include "smeval/meta.hpp"
#include "smeval/morphology.hpp"
#include "smeval/parallel.hpp"
#include "smeval/rank.hpp"
#include "smeval/rng.hpp"
#include "smeval/score_matrix.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smeval;

namespace {

struct CommonOpts {
    std::string manifest_path;
    std::vector<std::string> measures{"s"};
    double alpha = 0.5;
    double lambda = 0.5;
    int k_blocks = 4;
    std::string weighting = "foreground";
    int thresholds = 256;
    uint64_t seed = 0;
    int jobs = 1;
    std::string out;
};

void add_measure_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha, "Object/region mixing weight");
    cmd->add_option("--lambda", o.lambda, "Dispersion penalty weight");
    cmd->add_option("--k-blocks", o.k_blocks, "Region blocks (power of 4)");
    cmd->add_option("--weighting", o.weighting, "Block weighting: foreground|area")
        ->check(CLI::IsMember({"foreground", "area"}));
    cmd->add_option("--thresholds", o.thresholds, "Sweep thresholds for AP/AUC");
}

void add_run_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed, recorded in outputs");
    cmd->add_option("--jobs", o.jobs, "Worker threads")->envname("SMEVAL_JOBS");
}

RunConfig to_run_config(const CommonOpts& o) {
    RunConfig cfg;
    cfg.measures = o.measures;
    cfg.measure_config.s_params.alpha = o.alpha;
    cfg.measure_config.s_params.lambda = o.lambda;
    cfg.measure_config.s_params.k_blocks = o.k_blocks;
    cfg.measure_config.s_params.weighting =
        o.weighting == "area" ? BlockWeighting::area : BlockWeighting::foreground;
    cfg.measure_config.num_thresholds = o.thresholds;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    return cfg;
}

json config_echo(const CommonOpts& o) {
    json j;
    j["measures"] = o.measures;
    j["alpha"] = o.alpha;
    j["lambda"] = o.lambda;
    j["k_blocks"] = o.k_blocks;
    j["weighting"] = o.weighting;
    j["thresholds"] = o.thresholds;
    j["seed"] = o.seed;
    j["jobs"] = o.jobs;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string sanitize_id(const std::string& id) {
    std::string s = id;
    for (char& c : s)
        if (c == '/' || c == '\\' || c == ':') c = '_';
    return s;
}

json meta_result_json(const MetaResult& r) {
    json j;
    j["mm"] = r.mm_id;
    j["value"] = r.value;
    j["seed"] = r.seed;
    for (const auto& [k, v] : r.extras) j["extras"][k] = v;
    json per = json::array();
    const char* aux_name = r.mm_id == 3 ? "ties" : (r.mm_id == 4 ? "structure_change" : nullptr);
    for (const auto& e : r.per_image) {
        json je;
        je["id"] = e.image_id;
        je["value"] = e.value;
        if (aux_name) je[aux_name] = e.aux;
        if (e.warning) je["degenerate_ranks"] = true;
        per.push_back(je);
    }
    j["per_image"] = per;
    if (!r.histogram.empty()) {
        json h = json::object();
        for (const auto& [d, c] : r.histogram) h[std::to_string(d)] = c;
        j["histogram"] = h;
    }
    if (r.mm_id == 5) {
        json candidates = json::array();
        for (const auto& e : r.per_image)
            if (e.value > 0.0) candidates.push_back(e.image_id);
        j["candidates"] = candidates;
    }
    return j;
}

// Plot data is emitted as plain CSV next to the JSON result.
void write_histogram_csv(const MetaResult& r, const std::string& json_path) {
    fs::path p(json_path);
    p.replace_extension(".histogram.csv");
    std::string text = "rank_distance,images\n";
    for (const auto& [d, c] : r.histogram)
        text += std::to_string(d) + "," + std::to_string(c) + "\n";
    write_text(p.string(), text);
}

ScoreMatrix app_scores_from_manifest(const DatasetManifest& man) {
    if (!man.has_app_scores())
        throw std::runtime_error(
            "manifest lacks app_scores entries; supply --app-scores or extend the manifest");
    ScoreMatrix m;
    m.model_ids = man.model_ids();
    std::vector<const ManifestImage*> images;
    for (const auto& img : man.images) images.push_back(&img);
    std::sort(images.begin(), images.end(),
              [](const ManifestImage* a, const ManifestImage* b) { return a->id < b->id; });
    for (const ManifestImage* img : images) {
        m.image_ids.push_back(img->id);
        std::vector<double> row;
        for (const auto& model : m.model_ids) row.push_back(img->app_scores.at(model));
        m.scores.push_back(std::move(row));
    }
    return m;
}

ScoreMatrix eval_one_measure(const DatasetManifest& man, const CommonOpts& o,
                             const std::string& measure) {
    CommonOpts local = o;
    local.measures = {measure};
    const EvalResult res = evaluate_manifest(man, to_run_config(local));
    if (!res.failures.empty()) {
        std::string msg = "images failed to evaluate:";
        for (const auto& f : res.failures) msg += " " + f.image_id + " (" + f.error + ");";
        throw std::runtime_error(msg);
    }
    return res.by_measure.at(measure);
}

// ---------------------------------------------------------------- eval --

int cmd_eval(const CommonOpts& o) {
    const DatasetManifest man = load_manifest(o.manifest_path);
    const RunConfig cfg = to_run_config(o);
    const EvalResult res = evaluate_manifest(man, cfg);

    fs::create_directories(o.out);
    for (const auto& [measure, matrix] : res.by_measure)
        save_score_csv(matrix, (fs::path(o.out) / (measure + ".csv")).string());

    json summary;
    summary["dataset"] = man.name;
    summary["config"] = config_echo(o);
    summary["images_evaluated"] =
        res.by_measure.begin()->second.image_count();
    summary["model_means"] = json::object();
    std::string means_csv = "measure,model,mean\n";
    for (const auto& [measure, means] : res.model_means()) {
        json jm = json::object();
        for (const auto& [model, v] : means) {
            jm[model] = v;
            means_csv += measure + "," + model + "," + format_score(v) + "\n";
        }
        summary["model_means"][measure] = jm;
    }
    write_text((fs::path(o.out) / "model_means.csv").string(), means_csv);
    json failures = json::array();
    for (const auto& f : res.failures)
        failures.push_back({{"id", f.image_id}, {"error", f.error}});
    summary["failures"] = failures;
    write_json((fs::path(o.out) / "summary.json").string(), summary);

    // Wall times vary run to run, so they live outside the deterministic
    // summary (see README).
    json timing;
    double total = 0.0;
    for (const auto& [id, ms] : res.per_image_ms) {
        timing["per_image_ms"][id] = ms;
        total += ms;
    }
    timing["total_ms"] = total;
    write_json((fs::path(o.out) / "timing.json").string(), timing);

    for (const auto& f : res.failures)
        std::cerr << "error: image " << f.image_id << ": " << f.error << "\n";
    return res.failures.empty() ? 0 : 2;
}

// ---------------------------------------------------------------- rank --

int cmd_rank(const std::string& scores_path, const std::string& by, const std::string& out) {
    const ScoreMatrix m = load_score_csv(scores_path);
    std::string text;
    if (by == "image") {
        text = "image_id";
        for (const auto& id : m.model_ids) text += "," + id;
        text += "\n";
        for (size_t i = 0; i < m.image_count(); ++i) {
            const auto ranks = rank_descending(m.row(i));
            text += m.image_ids[i];
            for (double r : ranks) text += "," + format_score(r);
            text += "\n";
        }
    } else {
        if (m.image_count() == 0)
            throw std::runtime_error("cannot rank models over an empty score matrix");
        std::vector<double> means(m.model_count(), 0.0);
        for (size_t j = 0; j < m.model_count(); ++j) {
            for (size_t i = 0; i < m.image_count(); ++i) means[j] += m.at(i, j);
            means[j] /= static_cast<double>(m.image_count());
        }
        const auto ranks = rank_descending(means);
        text = "model_id,mean_score,rank\n";
        for (size_t j = 0; j < m.model_count(); ++j)
            text += m.model_ids[j] + "," + format_score(means[j]) + "," +
                    format_score(ranks[j]) + "\n";
    }
    write_text(out, text);
    return 0;
}

// ---------------------------------------------------------------- meta --

struct MetaOpts {
    CommonOpts common;
    std::string mm;
    std::string scores_path;
    std::string app_scores_path;
    std::string scores_a_path;
    std::string scores_b_path;
    int switches = 100;
    double good_fraction = 0.418;
    std::string good_mode = "fraction";
    double good_cutoff = 0.5;
    int radius = 2;
    std::string perturb_mode = "mixed";
    int corrode_radius = 1;
    double sigma_frac = 0.25;
};

std::string single_measure(const MetaOpts& mo) {
    if (mo.common.measures.size() != 1)
        throw std::runtime_error("this meta-measure needs exactly one --measures entry");
    return mo.common.measures.front();
}

MetaResult run_mm1(const MetaOpts& mo) {
    ScoreMatrix scores;
    DatasetManifest man;
    const bool have_manifest = !mo.common.manifest_path.empty();
    if (have_manifest) man = load_manifest(mo.common.manifest_path);
    if (!mo.scores_path.empty())
        scores = load_score_csv(mo.scores_path);
    else if (have_manifest)
        scores = eval_one_measure(man, mo.common, single_measure(mo));
    else
        throw std::runtime_error("mm1 needs --scores or --manifest to obtain measure scores");

    ScoreMatrix app;
    if (!mo.app_scores_path.empty())
        app = load_score_csv(mo.app_scores_path);
    else if (have_manifest)
        app = app_scores_from_manifest(man);
    else
        throw std::runtime_error("mm1 needs --app-scores or manifest app_scores entries");
    return mm1_application_ranking(scores, app);
}

MetaResult run_mm2(const MetaOpts& mo) {
    if (mo.common.manifest_path.empty())
        throw std::runtime_error("mm2 needs --manifest to size the generic maps");
    const DatasetManifest man = load_manifest(mo.common.manifest_path);
    const std::string measure_name = single_measure(mo);
    const MeasureFn fn = make_measure(measure_name, to_run_config(mo.common).measure_config);

    ScoreMatrix sota;
    if (!mo.scores_path.empty())
        sota = load_score_csv(mo.scores_path);
    else
        sota = eval_one_measure(man, mo.common, measure_name);

    std::map<std::string, const ManifestImage*> by_id;
    for (const auto& img : man.images) by_id[img.id] = &img;
    std::vector<double> generic(sota.image_count(), 0.0);
    parallel_for(sota.image_count(), mo.common.jobs, [&](size_t i) {
        const auto it = by_id.find(sota.image_ids[i]);
        if (it == by_id.end())
            throw std::runtime_error("score CSV image missing from manifest: " +
                                     sota.image_ids[i]);
        const BinMap gt = load_binary_map(it->second->gt_path);
        const GrayMap baseline = gaussian_baseline_map(gt.width, gt.height, mo.sigma_frac);
        generic[i] = fn(baseline, gt);
    });
    return mm2_generic_vs_sota(sota, generic);
}

Mm3Params mm3_params(const MetaOpts& mo) {
    Mm3Params p;
    p.switches_per_image = mo.switches;
    p.good_fraction = mo.good_fraction;
    p.selection = mo.good_mode == "cutoff" ? GoodSelection::cutoff : GoodSelection::fraction;
    p.good_cutoff = mo.good_cutoff;
    p.seed = mo.common.seed;
    p.jobs = mo.common.jobs;
    return p;
}

MetaResult run_mm3(const MetaOpts& mo, const std::string& measure_name) {
    if (mo.common.manifest_path.empty())
        throw std::runtime_error("mm3 needs --manifest (raw maps, not just scores)");
    const DatasetManifest man = load_manifest(mo.common.manifest_path);
    const MeasureFn fn = make_measure(measure_name, to_run_config(mo.common).measure_config);
    const LoadedDataset ds = load_dataset(man, 0.5, mo.common.jobs);

    // Pool every model's map; each keeps its own image's GT as correct.
    std::vector<GrayMap> sms;
    std::vector<size_t> gt_of_sm;
    std::vector<std::string> ids;
    for (size_t i = 0; i < ds.maps.size(); ++i) {
        for (size_t mdl = 0; mdl < ds.maps[i].size(); ++mdl) {
            sms.push_back(ds.maps[i][mdl]);
            gt_of_sm.push_back(i);
            ids.push_back(ds.image_ids[i] + "/" + ds.model_ids[mdl]);
        }
    }
    return mm3_gt_switch_pooled(fn, sms, gt_of_sm, ds.gts, ids, mm3_params(mo));
}

MetaResult run_mm4(const MetaOpts& mo) {
    if (mo.common.manifest_path.empty())
        throw std::runtime_error("mm4 needs --manifest (raw maps, not just scores)");
    const DatasetManifest man = load_manifest(mo.common.manifest_path);
    const MeasureFn fn =
        make_measure(single_measure(mo), to_run_config(mo.common).measure_config);
    const LoadedDataset ds = load_dataset(man, 0.5, mo.common.jobs);

    Mm4Params p;
    p.radius = mo.radius;
    p.mode = perturb_mode_from_string(mo.perturb_mode);
    p.corrode_radius = mo.corrode_radius;
    p.seed = mo.common.seed;
    p.jobs = mo.common.jobs;
    return mm4_annotation_robustness(fn, ds.maps, ds.gts, ds.image_ids, p);
}

MetaResult run_mm5(const MetaOpts& mo) {
    if (mo.scores_a_path.empty() || mo.scores_b_path.empty())
        throw std::runtime_error("mm5 needs --scores-a and --scores-b");
    return mm5_rank_distance(load_score_csv(mo.scores_a_path), load_score_csv(mo.scores_b_path));
}

int cmd_meta(const MetaOpts& mo) {
    if (mo.mm == "table1") {
        // MM1-MM3 summary for every measure, one row per measure.
        if (mo.common.manifest_path.empty())
            throw std::runtime_error("meta table needs --manifest");
        const DatasetManifest man = load_manifest(mo.common.manifest_path);
        const std::vector<std::string> measures = {"ap", "auc", "fbw", "s"};
        std::string text = "measure,mm1,mm2_pct,mm3_pct\n";
        for (const auto& name : measures) {
            MetaOpts local = mo;
            local.common.measures = {name};
            local.scores_path.clear();
            const ScoreMatrix scores = eval_one_measure(man, local.common, name);

            ScoreMatrix app = !mo.app_scores_path.empty()
                                  ? load_score_csv(mo.app_scores_path)
                                  : app_scores_from_manifest(man);
            const MetaResult r1 = mm1_application_ranking(scores, app);

            const MetaResult r2 = run_mm2(local);
            const MetaResult r3 = run_mm3(local, name);
            text += name + "," + format_score(r1.value) + "," +
                    format_score(r2.extras.at("percent")) + "," + format_score(r3.value) + "\n";
        }
        write_text(mo.common.out, text);
        return 0;
    }

    MetaResult res;
    if (mo.mm == "1") res = run_mm1(mo);
    else if (mo.mm == "2") res = run_mm2(mo);
    else if (mo.mm == "3") res = run_mm3(mo, single_measure(mo));
    else if (mo.mm == "4") res = run_mm4(mo);
    else if (mo.mm == "5") res = run_mm5(mo);
    else throw std::runtime_error("unknown --mm value: " + mo.mm);
    res.seed = mo.common.seed;

    json j = meta_result_json(res);
    j["config"] = config_echo(mo.common);
    write_json(mo.common.out, j);
    if (mo.mm == "5") write_histogram_csv(res, mo.common.out);
    return 0;
}

// ------------------------------------------------------------- perturb --

int cmd_perturb(const CommonOpts& o, int radius, const std::string& mode_name,
                int corrode_radius) {
    const DatasetManifest man = load_manifest(o.manifest_path);
    const PerturbMode mode = perturb_mode_from_string(mode_name);
    if (radius < 1) throw std::runtime_error("--radius must be >= 1");

    std::vector<size_t> order(man.images.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return man.images[a].id < man.images[b].id; });

    fs::create_directories(o.out);
    json prov;
    prov["mode"] = mode_name;
    prov["radius"] = radius;
    prov["seed"] = o.seed;
    prov["images"] = json::object();

    struct Entry {
        std::string id, file;
        uint64_t magnitude;
    };
    std::vector<Entry> entries(order.size());
    parallel_for(order.size(), o.jobs, [&](size_t k) {
        const ManifestImage& img = man.images[order[k]];
        const BinMap gt = load_binary_map(img.gt_path);
        const BinMap perturbed = perturb_gt(gt, radius, mode, derive_seed(o.seed, k));
        const std::string file = sanitize_id(img.id) + "_gt.png";
        save_binary_map(perturbed, (fs::path(o.out) / file).string());
        entries[k] = {img.id, file, structure_change_magnitude(gt, perturbed, corrode_radius)};
    });
    for (const auto& e : entries) {
        prov["images"][e.id] = {{"file", e.file}, {"structure_change", e.magnitude}};
    }
    write_json((fs::path(o.out) / "provenance.json").string(), prov);
    return 0;
}

// --------------------------------------------------------------- pairs --

int cmd_pairs(const CommonOpts& o, const std::string& scores_a_path,
              const std::string& scores_b_path, size_t max_pairs, double min_distance) {
    const ScoreMatrix a = load_score_csv(scores_a_path);
    const ScoreMatrix b = load_score_csv(scores_b_path);
    const MetaResult mm5 = mm5_rank_distance(a, b);
    const auto pairs = select_study_pairs(mm5, a, b, max_pairs, min_distance, o.seed);

    std::map<std::string, const ManifestImage*> by_id;
    DatasetManifest man;
    if (!o.manifest_path.empty()) {
        man = load_manifest(o.manifest_path);
        for (const auto& img : man.images) by_id[img.id] = &img;
    }

    json j;
    j["seed"] = o.seed;
    j["min_distance"] = min_distance;
    j["pairs"] = json::array();
    for (const auto& p : pairs) {
        json jp;
        jp["image_id"] = p.image_id;
        jp["model_a"] = p.model_a;
        jp["model_b"] = p.model_b;
        jp["rank_distance"] = p.distance;
        if (const auto it = by_id.find(p.image_id); it != by_id.end()) {
            jp["map_a"] = it->second->maps.at(p.model_a);
            jp["map_b"] = it->second->maps.at(p.model_b);
            jp["gt"] = it->second->gt_path;
        }
        j["pairs"].push_back(jp);
    }
    write_json(o.out, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Foreground-map evaluation toolkit"};
    app.require_subcommand(1);

    CommonOpts eo;
    auto* eval_cmd = app.add_subcommand("eval", "Score every map in a manifest");
    eval_cmd->add_option("--manifest", eo.manifest_path, "Dataset manifest JSON")->required();
    eval_cmd->add_option("--measures", eo.measures, "Measures: s,fbeta,fbw,ap,auc")
        ->delimiter(',');
    add_measure_flags(eval_cmd, eo);
    add_run_flags(eval_cmd, eo);
    eval_cmd->add_option("--out", eo.out, "Output directory")->required();

    std::string rank_scores, rank_by = "image", rank_out;
    auto* rank_cmd = app.add_subcommand("rank", "Rank models from a score CSV");
    rank_cmd->add_option("--scores", rank_scores, "Score CSV")->required();
    rank_cmd->add_option("--by", rank_by, "image|model")
        ->check(CLI::IsMember({"image", "model"}));
    rank_cmd->add_option("--out", rank_out, "Output CSV")->required();

    MetaOpts mo;
    auto* meta_cmd = app.add_subcommand("meta", "Run a meta-measure protocol");
    meta_cmd->add_option("--mm", mo.mm, "1|2|3|4|5|table1")->required();
    meta_cmd->add_option("--manifest", mo.common.manifest_path, "Dataset manifest JSON");
    meta_cmd->add_option("--measures", mo.common.measures, "Measure under test")
        ->delimiter(',');
    meta_cmd->add_option("--scores", mo.scores_path, "Measure score CSV");
    meta_cmd->add_option("--app-scores", mo.app_scores_path, "Application score CSV");
    meta_cmd->add_option("--scores-a", mo.scores_a_path, "Measure A score CSV (mm5)");
    meta_cmd->add_option("--scores-b", mo.scores_b_path, "Measure B score CSV (mm5)");
    meta_cmd->add_option("--switches", mo.switches, "Wrong-GT trials per map (mm3)");
    meta_cmd->add_option("--good-fraction", mo.good_fraction, "Good-map fraction (mm3)");
    meta_cmd->add_option("--good-mode", mo.good_mode, "fraction|cutoff (mm3)")
        ->check(CLI::IsMember({"fraction", "cutoff"}));
    meta_cmd->add_option("--good-cutoff", mo.good_cutoff, "Absolute good score (mm3)");
    meta_cmd->add_option("--radius", mo.radius, "Perturbation radius (mm4)");
    meta_cmd->add_option("--mode", mo.perturb_mode, "dilate|erode|open|close|mixed (mm4)");
    meta_cmd->add_option("--corrode-radius", mo.corrode_radius,
                         "Difference-map erosion radius (mm4)");
    meta_cmd->add_option("--sigma-frac", mo.sigma_frac, "Generic Gaussian sigma (mm2)");
    add_measure_flags(meta_cmd, mo.common);
    add_run_flags(meta_cmd, mo.common);
    meta_cmd->add_option("--out", mo.common.out, "Output JSON (CSV for table1)")->required();

    CommonOpts po;
    int p_radius = 2, p_corrode = 1;
    std::string p_mode = "mixed";
    auto* perturb_cmd = app.add_subcommand("perturb", "Write perturbed GT maps");
    perturb_cmd->add_option("--manifest", po.manifest_path, "Dataset manifest JSON")
        ->required();
    perturb_cmd->add_option("--radius", p_radius, "Disk radius (>= 1)");
    perturb_cmd->add_option("--mode", p_mode, "dilate|erode|open|close|mixed");
    perturb_cmd->add_option("--corrode-radius", p_corrode,
                            "Difference-map erosion radius for the magnitude");
    add_run_flags(perturb_cmd, po);
    perturb_cmd->add_option("--out", po.out, "Output directory")->required();

    CommonOpts qo;
    std::string q_scores_a, q_scores_b;
    size_t q_max_pairs = 50;
    double q_min_distance = 1.0;
    auto* pairs_cmd = app.add_subcommand("pairs", "Export user-study stimulus pairs");
    pairs_cmd->add_option("--scores-a", q_scores_a, "Measure A score CSV")->required();
    pairs_cmd->add_option("--scores-b", q_scores_b, "Measure B score CSV")->required();
    pairs_cmd->add_option("--manifest", qo.manifest_path,
                          "Manifest for resolving map paths (optional)");
    pairs_cmd->add_option("--max-pairs", q_max_pairs, "Sample size cap");
    pairs_cmd->add_option("--min-distance", q_min_distance, "Qualifying rank distance");
    add_run_flags(pairs_cmd, qo);
    pairs_cmd->add_option("--out", qo.out, "Output JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) return cmd_eval(eo);
        if (rank_cmd->parsed()) return cmd_rank(rank_scores, rank_by, rank_out);
        if (meta_cmd->parsed()) return cmd_meta(mo);
        if (perturb_cmd->parsed()) return cmd_perturb(po, p_radius, p_mode, p_corrode);
        if (pairs_cmd->parsed())
            return cmd_pairs(qo, q_scores_a, q_scores_b, q_max_pairs, q_min_distance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
