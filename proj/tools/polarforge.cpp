// polarforge: polar code construction, genetic-algorithm optimization and
// Monte-Carlo error-rate simulation from one binary.
//
// Subcommands: construct, evolve, simulate, analyze, chart, replay.
// Every data artifact is paired with a <file>.manifest.json that replays
// the producing command bit-exactly.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "polarforge/analysis.hpp"
#include "polarforge/construct.hpp"
#include "polarforge/core.hpp"
#include "polarforge/genalg.hpp"
#include "polarforge/manifest.hpp"
#include "polarforge/sim.hpp"

using nlohmann::json;
using namespace polarforge;

namespace {

int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    return os;
}

ChannelKind parse_channel(const std::string& s) {
    if (s == "awgn") return ChannelKind::awgn;
    if (s == "rayleigh") return ChannelKind::rayleigh;
    if (s == "bec") return ChannelKind::bec;
    throw CLI::ValidationError("--channel", "unknown channel '" + s + "'");
}

DecoderKind parse_decoder(const std::string& s) {
    if (s == "sc") return DecoderKind::sc;
    if (s == "scl") return DecoderKind::scl;
    if (s == "scl-crc") return DecoderKind::scl_crc;
    if (s == "bp") return DecoderKind::bp;
    if (s == "ml") return DecoderKind::ml;
    throw CLI::ValidationError("--decoder", "unknown decoder '" + s + "'");
}


// NaN-valued optionals are stored as JSON null and read back as NaN
void put_opt(json& j, const char* key, double v) {
    if (std::isnan(v)) j[key] = nullptr; else j[key] = v;
}
double get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j.at(key).get<double>();
}

// ------------------------------------------------------------- construct

struct ConstructParams {
    std::uint64_t N = 8, k = 4;
    std::string method = "bhattacharyya";
    double design_snr_db = std::numeric_limits<double>::quiet_NaN();
    double design_epsilon = std::numeric_limits<double>::quiet_NaN();
    int crc_width = 0;
    std::string out = "code.av";
};

void to_json(json& j, const ConstructParams& p) {
    j = json{{"N", p.N}, {"k", p.k}, {"method", p.method}, {"crc_width", p.crc_width},
             {"out", p.out}};
    put_opt(j, "design_snr_db", p.design_snr_db);
    put_opt(j, "design_epsilon", p.design_epsilon);
}
void from_json(const json& j, ConstructParams& p) {
    ConstructParams d;
    p.N = j.value("N", d.N);
    p.k = j.value("k", d.k);
    p.method = j.value("method", d.method);
    p.crc_width = j.value("crc_width", d.crc_width);
    p.out = j.value("out", d.out);
    p.design_snr_db = get_opt(j, "design_snr_db");
    p.design_epsilon = get_opt(j, "design_epsilon");
}

void run_construct(const ConstructParams& p, std::uint64_t seed, int /*workers*/) {
    std::optional<CrcConfig> crc;
    if (p.crc_width) crc = CodeSpec::default_crc(p.crc_width);
    auto spec = CodeSpec::make(static_cast<std::uint32_t>(p.N), static_cast<std::uint32_t>(p.k), crc);

    AVector a;
    if (p.method == "bhattacharyya") {
        if (!std::isnan(p.design_epsilon))
            a = construct_bhattacharyya_eps(spec, p.design_epsilon);
        else if (!std::isnan(p.design_snr_db))
            a = construct_bhattacharyya(spec, p.design_snr_db);
        else
            throw std::invalid_argument(
                "bhattacharyya construction needs --design-snr or --design-epsilon");
    } else if (p.method == "rm") {
        a = construct_rm(spec);
    } else {
        throw std::invalid_argument("unknown method '" + p.method + "'");
    }

    a.save_file(p.out);
    std::cout << "wrote " << p.out << " (N=" << a.size() << " ones=" << a.ones()
              << " dmin=" << min_distance(a) << ")\n";

    RunManifest m;
    m.subcommand = "construct";
    m.params = p;
    m.seed = seed;
    m.outputs = {p.out};
    m.save(RunManifest::path_for(p.out));
}

// ---------------------------------------------------------------- evolve

struct EvolveParams {
    std::uint64_t N = 64, k = 32;
    std::string channel = "awgn";
    double snr_db = std::numeric_limits<double>::quiet_NaN();
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    std::string decoder = "sc";
    int list_size = 8;
    int bp_iters = 200;
    int crc_width = 0;
    std::string metric = "ber";
    int generations = 100;
    int truncation = 5;
    std::uint64_t budget_errors = 100;
    std::uint64_t budget_frames = 1'000'000;
    bool reeval = false;
    bool no_rm_seed = false;
    std::string out = "evolved.av";
    std::string history = "";
};

void to_json(json& j, const EvolveParams& p) {
    j = json{{"N", p.N}, {"k", p.k}, {"channel", p.channel}, {"decoder", p.decoder},
             {"list_size", p.list_size}, {"bp_iters", p.bp_iters}, {"crc_width", p.crc_width},
             {"metric", p.metric}, {"generations", p.generations}, {"truncation", p.truncation},
             {"budget_errors", p.budget_errors}, {"budget_frames", p.budget_frames},
             {"reeval", p.reeval}, {"no_rm_seed", p.no_rm_seed}, {"out", p.out},
             {"history", p.history}};
    put_opt(j, "snr_db", p.snr_db);
    put_opt(j, "epsilon", p.epsilon);
}
void from_json(const json& j, EvolveParams& p) {
    EvolveParams d;
    p.N = j.value("N", d.N);
    p.k = j.value("k", d.k);
    p.channel = j.value("channel", d.channel);
    p.decoder = j.value("decoder", d.decoder);
    p.list_size = j.value("list_size", d.list_size);
    p.bp_iters = j.value("bp_iters", d.bp_iters);
    p.crc_width = j.value("crc_width", d.crc_width);
    p.metric = j.value("metric", d.metric);
    p.generations = j.value("generations", d.generations);
    p.truncation = j.value("truncation", d.truncation);
    p.budget_errors = j.value("budget_errors", d.budget_errors);
    p.budget_frames = j.value("budget_frames", d.budget_frames);
    p.reeval = j.value("reeval", d.reeval);
    p.no_rm_seed = j.value("no_rm_seed", d.no_rm_seed);
    p.out = j.value("out", d.out);
    p.history = j.value("history", d.history);
    p.snr_db = get_opt(j, "snr_db");
    p.epsilon = get_opt(j, "epsilon");
}

void run_evolve(const EvolveParams& p, std::uint64_t seed, int workers) {
    GenAlgConfig cfg;
    std::optional<CrcConfig> crc;
    if (p.crc_width) crc = CodeSpec::default_crc(p.crc_width);
    cfg.spec = CodeSpec::make(static_cast<std::uint32_t>(p.N), static_cast<std::uint32_t>(p.k), crc);
    cfg.channel.kind = parse_channel(p.channel);
    cfg.channel.rate = cfg.spec.rate();
    if (cfg.channel.kind == ChannelKind::bec) {
        if (std::isnan(p.epsilon))
            throw std::invalid_argument("evolve on the bec channel needs --epsilon");
        cfg.channel.epsilon = p.epsilon;
    } else {
        if (std::isnan(p.snr_db))
            throw std::invalid_argument("evolve on " + p.channel + " needs --snr-db");
        cfg.snr_genalg_db = p.snr_db;
    }
    cfg.decoder.kind = parse_decoder(p.decoder);
    cfg.decoder.list_size = p.list_size;
    cfg.decoder.bp_max_iters = p.bp_iters;
    cfg.n_pop_max = p.generations;
    cfg.truncation = p.truncation;
    cfg.metric = p.metric == "bler" ? FitnessMetric::bler : FitnessMetric::ber;
    cfg.budget = StoppingRule{p.budget_errors, p.budget_frames};
    cfg.master_seed = seed;
    cfg.reevaluate_elites = p.reeval;
    cfg.seed_rm = !p.no_rm_seed;
    cfg.workers = workers;

    GenAlgResult res = run_genalg(cfg);
    res.best.a.save_file(p.out);

    json hist = json::array();
    std::string hist_path = p.history.empty() ? p.out + ".history.csv" : p.history;
    {
        auto os = open_out(hist_path);
        os << "generation,best_error_rate\n";
        std::ostringstream line;
        line.precision(17);
        for (const auto& rec : res.history) {
            line.str("");
            line << rec.generation << ',' << rec.best_error_rate << '\n';
            os << line.str();
            hist.push_back({{"generation", rec.generation},
                            {"best_error_rate", rec.best_error_rate},
                            {"best_avector_hex", rec.best.to_hex()}});
        }
    }
    std::cout << "best " << to_string(cfg.metric) << " at generation "
              << res.history.back().generation << ": " << res.history.back().best_error_rate
              << " (wrote " << p.out << ", " << hist_path << ")\n";

    RunManifest m;
    m.subcommand = "evolve";
    m.params = p;
    m.seed = seed;
    m.outputs = {p.out, hist_path};
    m.results = hist;
    m.save(RunManifest::path_for(p.out));
}

// -------------------------------------------------------------- simulate

struct SimulateParams {
    std::string avector;
    std::string channel = "awgn";
    double snr_db = std::numeric_limits<double>::quiet_NaN();
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> snr_grid;
    std::vector<double> epsilon_grid;
    std::vector<int> iter_grid;
    std::vector<int> list_grid;
    std::string decoder = "sc";
    int list_size = 8;
    int bp_iters = 200;
    int crc_width = 0;
    std::uint64_t errors = 100;
    std::uint64_t frames = 1'000'000;
    bool all_zero = false;
    std::string out = "points.csv";
};

void to_json(json& j, const SimulateParams& p) {
    j = json{{"avector", p.avector}, {"channel", p.channel}, {"snr_grid", p.snr_grid},
             {"epsilon_grid", p.epsilon_grid}, {"iter_grid", p.iter_grid},
             {"list_grid", p.list_grid}, {"decoder", p.decoder}, {"list_size", p.list_size},
             {"bp_iters", p.bp_iters}, {"crc_width", p.crc_width}, {"errors", p.errors},
             {"frames", p.frames}, {"all_zero", p.all_zero}, {"out", p.out}};
    put_opt(j, "snr_db", p.snr_db);
    put_opt(j, "epsilon", p.epsilon);
}
void from_json(const json& j, SimulateParams& p) {
    SimulateParams d;
    p.avector = j.value("avector", d.avector);
    p.channel = j.value("channel", d.channel);
    p.snr_grid = j.value("snr_grid", d.snr_grid);
    p.epsilon_grid = j.value("epsilon_grid", d.epsilon_grid);
    p.iter_grid = j.value("iter_grid", d.iter_grid);
    p.list_grid = j.value("list_grid", d.list_grid);
    p.decoder = j.value("decoder", d.decoder);
    p.list_size = j.value("list_size", d.list_size);
    p.bp_iters = j.value("bp_iters", d.bp_iters);
    p.crc_width = j.value("crc_width", d.crc_width);
    p.errors = j.value("errors", d.errors);
    p.frames = j.value("frames", d.frames);
    p.all_zero = j.value("all_zero", d.all_zero);
    p.out = j.value("out", d.out);
    p.snr_db = get_opt(j, "snr_db");
    p.epsilon = get_opt(j, "epsilon");
}

void run_simulate(const SimulateParams& p, std::uint64_t seed, int workers) {
    AVector a = AVector::load_file(p.avector);

    SimTask task;
    std::optional<CrcConfig> crc;
    if (p.crc_width) crc = CodeSpec::default_crc(p.crc_width);
    std::uint32_t payload = static_cast<std::uint32_t>(a.ones()) - (crc ? crc->width : 0);
    task.spec = CodeSpec::make(static_cast<std::uint32_t>(a.size()), payload, crc);
    task.a = a;
    task.decoder.kind = parse_decoder(p.decoder);
    task.decoder.list_size = p.list_size;
    task.decoder.bp_max_iters = p.bp_iters;
    task.channel.kind = parse_channel(p.channel);
    task.channel.rate = task.spec.rate();
    task.all_zero = p.all_zero;

    StoppingRule stop{p.errors, p.frames};
    SweepGrid grid;
    grid.snr_db = p.snr_grid;
    grid.epsilon = p.epsilon_grid;
    grid.bp_iters = p.iter_grid;
    grid.list_sizes = p.list_grid;

    std::vector<SimPoint> points;
    bool any_grid = !grid.snr_db.empty() || !grid.epsilon.empty() || !grid.bp_iters.empty() ||
                    !grid.list_sizes.empty();
    if (any_grid) {
        if (task.channel.kind == ChannelKind::bec) {
            if (!std::isnan(p.epsilon)) task.channel.epsilon = p.epsilon;
        } else if (!std::isnan(p.snr_db)) {
            task.channel.ebn0_db = p.snr_db;
        }
        points = run_sweep(task, grid, stop, seed, workers);
    } else {
        if (task.channel.kind == ChannelKind::bec) {
            if (std::isnan(p.epsilon))
                throw std::invalid_argument("simulate on the bec channel needs --epsilon");
            task.channel.epsilon = p.epsilon;
        } else {
            if (std::isnan(p.snr_db))
                throw std::invalid_argument("simulate on " + p.channel + " needs --snr-db");
            task.channel.ebn0_db = p.snr_db;
        }
        points.push_back(run_point(task, stop, seed, workers));
    }

    {
        auto os = open_out(p.out);
        write_sim_csv(os, points);
    }
    for (const auto& pt : points)
        std::cout << pt.decoder_desc << " @ " << pt.channel_param << ": ber=" << pt.ber
                  << " bler=" << pt.bler << " frames=" << pt.frames << "\n";

    RunManifest m;
    m.subcommand = "simulate";
    m.params = p;
    m.seed = seed;
    m.inputs = {p.avector};
    m.outputs = {p.out};
    m.save(RunManifest::path_for(p.out));
}

// --------------------------------------------------------------- analyze

struct AnalyzeParams {
    std::string avector;
    std::string out = "spectrum.csv";
    // mismatch-table mode: minimum SNR meeting a target error rate per
    // (construction, decoder) cell
    bool mismatch = false;
    std::vector<std::string> avectors;  // labeled rows, defaults to --avector
    std::vector<std::string> decoders;  // e.g. sc, scl:8, scl-crc:32, bp:200
    double target = 1e-4;
    std::string metric = "ber";
    std::vector<double> snr_grid;
    int crc_width = 0;
    std::uint64_t errors = 100;
    std::uint64_t frames = 1'000'000;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AnalyzeParams, avector, out, mismatch, avectors,
                                                decoders, target, metric, snr_grid, crc_width,
                                                errors, frames)

DecoderConfig parse_decoder_desc(const std::string& desc) {
    DecoderConfig d;
    auto colon = desc.find(':');
    std::string kind = desc.substr(0, colon);
    d.kind = parse_decoder(kind);
    if (colon != std::string::npos) {
        int arg = std::stoi(desc.substr(colon + 1));
        if (d.kind == DecoderKind::bp)
            d.bp_max_iters = arg;
        else
            d.list_size = arg;
    }
    return d;
}

void run_analyze(const AnalyzeParams& p, std::uint64_t seed, int workers) {
    if (p.mismatch) {
        std::vector<std::string> files = p.avectors.empty()
                                             ? std::vector<std::string>{p.avector}
                                             : p.avectors;
        if (p.decoders.empty())
            throw std::invalid_argument("mismatch mode needs --decoders");
        if (p.snr_grid.empty())
            throw std::invalid_argument("mismatch mode needs --snr-grid");

        std::vector<std::pair<std::string, AVector>> rows;
        std::optional<CodeSpec> spec;
        std::optional<CrcConfig> crc;
        if (p.crc_width) crc = CodeSpec::default_crc(p.crc_width);
        for (const auto& f : files) {
            AVector a = AVector::load_file(f);
            auto s = CodeSpec::make(static_cast<std::uint32_t>(a.size()),
                                    static_cast<std::uint32_t>(a.ones()) -
                                        (crc ? crc->width : 0),
                                    crc);
            if (spec && (spec->block_length != s.block_length ||
                         spec->payload_bits != s.payload_bits))
                throw std::invalid_argument("mismatch mode needs same-sized codes");
            spec = s;
            rows.emplace_back(f, std::move(a));
        }
        std::vector<DecoderConfig> decs;
        for (const auto& d : p.decoders) decs.push_back(parse_decoder_desc(d));

        auto table = mismatch_table(rows, decs, p.target,
                                    p.metric == "bler" ? FitnessMetric::bler : FitnessMetric::ber,
                                    p.snr_grid, *spec, ChannelKind::awgn,
                                    StoppingRule{p.errors, p.frames}, seed, workers);
        {
            auto os = open_out(p.out);
            write_mismatch_csv(os, table);
        }
        std::cout << "wrote " << p.out << " (" << rows.size() << " constructions x "
                  << decs.size() << " decoders)\n";

        RunManifest m;
        m.subcommand = "analyze";
        m.params = p;
        m.seed = seed;
        m.inputs = files;
        m.outputs = {p.out};
        m.save(RunManifest::path_for(p.out));
        return;
    }

    if (p.avector.empty())
        throw std::invalid_argument("analyze needs --avector (or --mismatch with --avectors)");
    AVector a = AVector::load_file(p.avector);
    WeightSpectrum spec = weight_enumerator_bruteforce(a, workers);
    {
        auto os = open_out(p.out);
        os << "weight,count\n";
        for (std::size_t d = 0; d < spec.count.size(); ++d)
            if (spec.count[d]) os << d << ',' << spec.count[d] << '\n';
    }
    std::cout << "d_min=" << min_distance(a) << " A_dmin=" << spec.count[spec.min_nonzero_weight()]
              << " codewords=" << spec.total() << " (wrote " << p.out << ")\n";

    RunManifest m;
    m.subcommand = "analyze";
    m.params = p;
    m.seed = seed;
    m.inputs = {p.avector};
    m.outputs = {p.out};
    m.save(RunManifest::path_for(p.out));
}

// ----------------------------------------------------------------- chart

struct ChartParams {
    std::string avector;
    double design_epsilon = std::numeric_limits<double>::quiet_NaN();
    double design_snr_db = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t width = 128;
    std::string out = "chart.pgm";
    std::string csv = "";
};

void to_json(json& j, const ChartParams& p) {
    j = json{{"avector", p.avector}, {"width", p.width}, {"out", p.out}, {"csv", p.csv}};
    put_opt(j, "design_epsilon", p.design_epsilon);
    put_opt(j, "design_snr_db", p.design_snr_db);
}
void from_json(const json& j, ChartParams& p) {
    ChartParams d;
    p.avector = j.value("avector", d.avector);
    p.width = j.value("width", d.width);
    p.out = j.value("out", d.out);
    p.csv = j.value("csv", d.csv);
    p.design_epsilon = get_opt(j, "design_epsilon");
    p.design_snr_db = get_opt(j, "design_snr_db");
}

void run_chart(const ChartParams& p, std::uint64_t seed, int /*workers*/) {
    AVector a = AVector::load_file(p.avector);
    int n = std::countr_zero(a.size());
    double eps;
    if (!std::isnan(p.design_epsilon))
        eps = p.design_epsilon;
    else if (!std::isnan(p.design_snr_db))
        eps = design_snr_to_epsilon(p.design_snr_db,
                                    static_cast<double>(a.ones()) / static_cast<double>(a.size()));
    else
        throw std::invalid_argument("chart needs --design-epsilon or --design-snr");

    auto z = bhattacharyya_bec(n, eps);
    FrozenChart chart = frozen_channel_chart(a, z, p.width);
    {
        auto os = open_out(p.out);
        write_chart_pgm(os, chart);
    }
    std::vector<std::string> outputs{p.out};
    if (!p.csv.empty()) {
        auto os = open_out(p.csv);
        write_chart_csv(os, chart);
        outputs.push_back(p.csv);
    }
    std::cout << chart.rows << "x" << chart.cols << " chart, " << chart.inversions
              << " reliability inversions (wrote " << p.out << ")\n";

    RunManifest m;
    m.subcommand = "chart";
    m.params = p;
    m.seed = seed;
    m.inputs = {p.avector};
    m.outputs = outputs;
    m.save(RunManifest::path_for(p.out));
}

// ---------------------------------------------------------------- replay

void run_replay(const std::string& manifest_path, int workers) {
    RunManifest m = RunManifest::load(manifest_path);
    if (m.subcommand == "construct")
        run_construct(m.params.get<ConstructParams>(), m.seed, workers);
    else if (m.subcommand == "evolve")
        run_evolve(m.params.get<EvolveParams>(), m.seed, workers);
    else if (m.subcommand == "simulate")
        run_simulate(m.params.get<SimulateParams>(), m.seed, workers);
    else if (m.subcommand == "analyze")
        run_analyze(m.params.get<AnalyzeParams>(), m.seed, workers);
    else if (m.subcommand == "chart")
        run_chart(m.params.get<ChartParams>(), m.seed, workers);
    else
        throw std::runtime_error("manifest has unknown subcommand '" + m.subcommand + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar code construction, GA optimization and Monte-Carlo simulation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");

    std::uint64_t seed = 1;
    int workers = default_workers();
    app.add_option("--seed", seed, "master seed")->envname("POLARFORGE_SEED");
    app.add_option("--workers", workers, "worker threads (default: hardware parallelism)");

    ConstructParams cp;
    auto* c = app.add_subcommand("construct", "build a classical A-vector");
    c->add_option("-N,--block-length", cp.N, "block length (power of two)")->required();
    c->add_option("-k,--payload", cp.k, "payload bits")->required();
    c->add_option("--method", cp.method, "bhattacharyya | rm");
    c->add_option("--design-snr", cp.design_snr_db, "design Eb/N0 in dB");
    c->add_option("--design-epsilon", cp.design_epsilon, "design BEC erasure probability");
    c->add_option("--crc", cp.crc_width, "CRC width (16 or 24); A-vector carries k+r ones");
    c->add_option("-o,--out", cp.out, "output A-vector file");

    EvolveParams ep;
    auto* e = app.add_subcommand("evolve", "genetic-algorithm construction");
    e->add_option("-N,--block-length", ep.N, "block length (power of two)")->required();
    e->add_option("-k,--payload", ep.k, "payload bits")->required();
    e->add_option("--channel", ep.channel, "awgn | rayleigh | bec");
    e->add_option("--snr-db", ep.snr_db, "design SNR (Eb/N0, dB) of the GA");
    e->add_option("--epsilon", ep.epsilon, "design erasure probability (bec)");
    e->add_option("--decoder", ep.decoder, "sc | scl | scl-crc | bp | ml");
    e->add_option("--list-size", ep.list_size, "SCL list size");
    e->add_option("--bp-iters", ep.bp_iters, "BP iteration cap");
    e->add_option("--crc", ep.crc_width, "CRC width (16 or 24)");
    e->add_option("--metric", ep.metric, "ber | bler");
    e->add_option("--generations", ep.generations, "population updates");
    e->add_option("-T,--truncation", ep.truncation, "truncation selection count");
    e->add_option("--budget-errors", ep.budget_errors, "per-individual block-error budget");
    e->add_option("--budget-frames", ep.budget_frames, "per-individual frame budget");
    e->add_flag("--reeval", ep.reeval, "re-simulate elites each generation");
    e->add_flag("--no-rm-seed", ep.no_rm_seed, "do not inject the RM construction");
    e->add_option("-o,--out", ep.out, "output A-vector file");
    e->add_option("--history", ep.history, "history CSV path (default: <out>.history.csv)");

    SimulateParams sp;
    auto* s = app.add_subcommand("simulate", "Monte-Carlo error-rate point or sweep");
    s->add_option("--avector", sp.avector, "A-vector file")->required();
    s->add_option("--channel", sp.channel, "awgn | rayleigh | bec");
    s->add_option("--snr-db", sp.snr_db, "Eb/N0 in dB");
    s->add_option("--epsilon", sp.epsilon, "BEC erasure probability");
    s->add_option("--snr-grid", sp.snr_grid, "comma list of Eb/N0 points")->delimiter(',');
    s->add_option("--epsilon-grid", sp.epsilon_grid, "comma list of epsilon points")->delimiter(',');
    s->add_option("--iter-grid", sp.iter_grid, "comma list of BP iteration caps")->delimiter(',');
    s->add_option("--list-grid", sp.list_grid, "comma list of SCL list sizes")->delimiter(',');
    s->add_option("--decoder", sp.decoder, "sc | scl | scl-crc | bp | ml");
    s->add_option("--list-size", sp.list_size, "SCL list size");
    s->add_option("--bp-iters", sp.bp_iters, "BP iteration cap");
    s->add_option("--crc", sp.crc_width, "CRC width (16 or 24)");
    s->add_option("--errors", sp.errors, "stop after this many block errors");
    s->add_option("--frames", sp.frames, "frame cap");
    s->add_flag("--all-zero", sp.all_zero, "transmit the all-zero codeword");
    s->add_option("-o,--out", sp.out, "output CSV");

    AnalyzeParams ap;
    auto* an = app.add_subcommand("analyze", "weight spectrum or design/decoder mismatch table");
    an->add_option("--avector", ap.avector, "A-vector file");
    an->add_option("-o,--out", ap.out, "output CSV");
    an->add_flag("--mismatch", ap.mismatch, "emit the minimum-SNR mismatch table instead");
    an->add_option("--avectors", ap.avectors, "A-vector files (mismatch rows)")->delimiter(',');
    an->add_option("--decoders", ap.decoders, "decoder list, e.g. sc,scl:8,bp:200")
        ->delimiter(',');
    an->add_option("--target", ap.target, "target error rate");
    an->add_option("--metric", ap.metric, "ber | bler");
    an->add_option("--snr-grid", ap.snr_grid, "ascending Eb/N0 grid")->delimiter(',');
    an->add_option("--crc", ap.crc_width, "CRC width carried by the codes");
    an->add_option("--errors", ap.errors, "stop rule: block errors");
    an->add_option("--frames", ap.frames, "stop rule: frame cap");

    ChartParams chp;
    auto* ch = app.add_subcommand("chart", "reliability-sorted frozen channel chart");
    ch->add_option("--avector", chp.avector, "A-vector file")->required();
    ch->add_option("--design-epsilon", chp.design_epsilon, "epsilon for the Z ordering");
    ch->add_option("--design-snr", chp.design_snr_db, "design SNR for the Z ordering");
    ch->add_option("--width", chp.width, "chart width (must divide N)");
    ch->add_option("-o,--out", chp.out, "output PGM");
    ch->add_option("--csv", chp.csv, "also write a 0/1 CSV");

    std::string manifest_path;
    auto* r = app.add_subcommand("replay", "re-run a recorded manifest");
    r->add_option("manifest", manifest_path, "manifest JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? 0 : 2;  // 2 = usage error
    }

    try {
        if (c->parsed()) run_construct(cp, seed, workers);
        if (e->parsed()) run_evolve(ep, seed, workers);
        if (s->parsed()) run_simulate(sp, seed, workers);
        if (an->parsed()) run_analyze(ap, seed, workers);
        if (ch->parsed()) run_chart(chp, seed, workers);
        if (r->parsed()) run_replay(manifest_path, workers);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::logic_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
