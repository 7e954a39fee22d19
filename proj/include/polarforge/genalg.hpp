#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polarforge/avector.hpp"
#include "polarforge/rng.hpp"
#include "polarforge/sim.hpp"

namespace polarforge {

struct Individual {
    AVector a;
    std::optional<SimPoint> fitness;  // measured error rate with counts
    int generation_born = 0;
};

struct Population {
    std::vector<Individual> members;
    int truncation = 5;  // T
    int generation = 0;
    FitnessMetric metric = FitnessMetric::ber;  // ranking key
};

// population size after an update: T elites + T mutants + C(T,2) crossovers
inline int population_size(int truncation) { return (truncation * truncation + 3 * truncation) / 2; }

struct GenAlgConfig {
    CodeSpec spec;
    ChannelConfig channel;          // evaluated at snr_genalg_db (or channel.epsilon for bec)
    DecoderConfig decoder;
    double snr_genalg_db = 2.0;
    int n_pop_max = 100;            // generations
    int truncation = 5;             // T; S is derived, never set directly
    FitnessMetric metric = FitnessMetric::ber;
    StoppingRule budget{100, 1'000'000};  // per-individual evaluation budget
    std::uint64_t master_seed = 1;
    bool reevaluate_elites = false; // re-simulate carried elites each generation
    bool seed_rm = true;            // inject the RM construction for diversity
    int workers = 1;
};

// Bhattacharyya seeds over design SNRs 0..5 dB in 0.25 dB steps (plus the
// RM construction), deduplicated, evaluated, truncated to the fittest S;
// any shortfall is filled with mutants of the best seed.
Population initialize_population(const GenAlgConfig& config);

// swap of one random non-frozen and one random frozen position
AVector mutation(const AVector& a, RngStream& rng);

// first half of a1, second half of a2, then random surplus-type bit flips
// until the popcount constraint holds again
AVector crossover(const AVector& a1, const AVector& a2, RngStream& rng);

// truncation selection: T elites carried with their fitness, T mutants,
// one crossover per unordered elite pair
Population update_population(const Population& pop, RngStream& rng);

// Monte-Carlo fitness for every unevaluated member; one generation shares
// common random numbers so ranking noise cancels
void compute_fitness(Population& pop, const GenAlgConfig& config);

// fitness-ranked order (error rate, then raw errors, then insertion order)
std::vector<std::size_t> rank_members(const Population& pop, FitnessMetric metric);

struct GenerationRecord {
    int generation = 0;
    double best_error_rate = 0.0;
    AVector best;
};

struct GenAlgResult {
    Individual best;
    std::vector<GenerationRecord> history;  // length n_pop_max + 1
};

GenAlgResult run_genalg(const GenAlgConfig& config);

}  // namespace polarforge
