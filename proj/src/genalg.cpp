#include "polarforge/genalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "polarforge/construct.hpp"

namespace polarforge {

namespace {

constexpr std::uint64_t kGaOpStreamTag = 0x67656E616C67ULL;  // GA transform draws

std::uint64_t eval_seed(const GenAlgConfig& cfg, int generation) {
    // common random numbers: one shared stream key unless elites are
    // re-simulated, which salts by generation to refresh the noise
    return cfg.reevaluate_elites ? cfg.master_seed ^ (0x9E3779B97F4A7C15ULL * (generation + 1))
                                 : cfg.master_seed;
}

SimTask make_task(const GenAlgConfig& cfg, const AVector& a) {
    SimTask t;
    t.spec = cfg.spec;
    t.a = a;
    t.decoder = cfg.decoder;
    t.channel = cfg.channel;
    if (t.channel.kind != ChannelKind::bec) {
        t.channel.ebn0_db = cfg.snr_genalg_db;
        t.channel.rate = cfg.spec.rate();
    }
    return t;
}

bool contains(const std::vector<Individual>& members, const AVector& a) {
    for (const auto& m : members)
        if (m.a == a) return true;
    return false;
}

}  // namespace

std::vector<std::size_t> rank_members(const Population& pop, FitnessMetric metric) {
    std::vector<std::size_t> order(pop.members.size());
    std::iota(order.begin(), order.end(), 0);
    auto errs = [metric](const SimPoint& p) {
        return metric == FitnessMetric::ber ? p.bit_errs : p.blk_errs;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& fx = pop.members[x].fitness;
        const auto& fy = pop.members[y].fitness;
        if (fx.has_value() != fy.has_value()) return fx.has_value();  // evaluated first
        if (!fx) return false;
        double rx = fx->rate_of(metric), ry = fy->rate_of(metric);
        if (rx != ry) return rx < ry;
        return errs(*fx) < errs(*fy);
    });
    return order;
}

AVector mutation(const AVector& a, RngStream& rng) {
    std::size_t ones = a.ones();
    if (ones == 0 || ones == a.size())
        throw std::invalid_argument("mutation: needs at least one frozen and one non-frozen position");
    std::size_t pick_one = rng.below(ones);
    std::size_t pick_zero = rng.below(a.size() - ones);
    AVector out = a;
    std::size_t seen_one = 0, seen_zero = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.is_info(i)) {
            if (seen_one++ == pick_one) out.set_info(i, false);
        } else {
            if (seen_zero++ == pick_zero) out.set_info(i, true);
        }
    }
    return out;
}

AVector crossover(const AVector& a1, const AVector& a2, RngStream& rng) {
    if (a1.size() != a2.size() || a1.ones() != a2.ones())
        throw std::invalid_argument("crossover: parents must share length and popcount");
    std::size_t N = a1.size();
    std::size_t k = a1.ones();
    AVector child(N);
    for (std::size_t i = 0; i < N / 2; ++i) child.set_info(i, a1.is_info(i));
    for (std::size_t i = N / 2; i < N; ++i) child.set_info(i, a2.is_info(i));
    // rate repair: flip random positions of the surplus type
    std::size_t ones = child.ones();
    while (ones != k) {
        bool surplus_ones = ones > k;
        std::size_t count = surplus_ones ? ones : N - ones;
        std::size_t pick = rng.below(count);
        std::size_t seen = 0;
        for (std::size_t i = 0; i < N; ++i) {
            if (child.is_info(i) != surplus_ones) continue;
            if (seen++ == pick) {
                child.set_info(i, !surplus_ones);
                break;
            }
        }
        ones += surplus_ones ? -1 : +1;
    }
    return child;
}

void compute_fitness(Population& pop, const GenAlgConfig& config) {
    std::uint64_t seed = eval_seed(config, pop.generation);
    for (auto& m : pop.members) {
        if (m.fitness && !config.reevaluate_elites) continue;
        SimTask task = make_task(config, m.a);
        m.fitness = run_point(task, config.budget, seed, config.workers);
    }
}

Population initialize_population(const GenAlgConfig& config) {
    Population pop;
    pop.truncation = config.truncation;
    pop.generation = 0;
    pop.metric = config.metric;

    for (int step = 0; step <= 20; ++step) {
        double snr = 0.25 * step;  // 0.0 .. 5.0 dB
        AVector a = config.channel.kind == ChannelKind::bec
                        ? construct_bhattacharyya_eps(
                              config.spec, design_snr_to_epsilon(snr, config.spec.rate()))
                        : construct_bhattacharyya(config.spec, snr);
        if (!contains(pop.members, a)) pop.members.push_back({std::move(a), {}, 0});
    }
    if (config.seed_rm) {
        AVector rm = construct_rm(config.spec);
        if (!contains(pop.members, rm)) pop.members.push_back({std::move(rm), {}, 0});
    }

    compute_fitness(pop, config);

    int S = population_size(config.truncation);
    auto order = rank_members(pop, config.metric);
    std::vector<Individual> kept;
    for (std::size_t t = 0; t < order.size() && kept.size() < static_cast<std::size_t>(S); ++t)
        kept.push_back(pop.members[order[t]]);

    // shortfall (heavy dedup or tiny codes): pad with mutants of the best
    RngStream rng(config.master_seed, kGaOpStreamTag);
    int guard = 0;
    while (kept.size() < static_cast<std::size_t>(S) && guard < 64 * S) {
        AVector m = mutation(kept.front().a, rng);
        ++guard;
        bool dup = false;
        for (const auto& ind : kept)
            if (ind.a == m) { dup = true; break; }
        if (!dup) kept.push_back({std::move(m), {}, 0});
    }
    pop.members = std::move(kept);
    compute_fitness(pop, config);
    return pop;
}

Population update_population(const Population& pop, RngStream& rng) {
    int T = pop.truncation;
    std::size_t evaluated = 0;
    for (const auto& m : pop.members)
        if (m.fitness) ++evaluated;
    if (evaluated < static_cast<std::size_t>(T))
        throw std::logic_error("update_population: fewer than T evaluated members");

    auto order = rank_members(pop, pop.metric);

    Population next;
    next.truncation = T;
    next.generation = pop.generation + 1;
    next.metric = pop.metric;

    std::vector<const Individual*> elites;
    for (int t = 0; t < T; ++t) elites.push_back(&pop.members[order[t]]);

    for (const auto* e : elites) next.members.push_back(*e);  // self-offsprings, fitness kept
    for (const auto* e : elites)
        next.members.push_back({mutation(e->a, rng), {}, next.generation});
    for (int i = 0; i < T; ++i)
        for (int j = i + 1; j < T; ++j)
            next.members.push_back({crossover(elites[i]->a, elites[j]->a, rng), {}, next.generation});

    return next;
}

GenAlgResult run_genalg(const GenAlgConfig& config) {
    if (config.truncation < 1) throw std::invalid_argument("run_genalg: T must be >= 1");
    Population pop = initialize_population(config);
    RngStream ga_rng(config.master_seed, kGaOpStreamTag + 1);

    GenAlgResult result;
    auto record = [&](const Population& p) {
        auto order = rank_members(p, config.metric);
        const Individual& best = p.members[order.front()];
        result.history.push_back(
            {p.generation, best.fitness->rate_of(config.metric), best.a});
    };
    record(pop);

    for (int g = 1; g <= config.n_pop_max; ++g) {
        pop = update_population(pop, ga_rng);
        compute_fitness(pop, config);
        record(pop);
    }

    auto order = rank_members(pop, config.metric);
    result.best = pop.members[order.front()];
    return result;
}

}  // namespace polarforge
