#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "socev/atomic.hpp"
#include <memory>

#include "socev/eval.hpp"

namespace socev {

struct GeneSpec {
    double min = 0.0;
    double max = 1.0;
    double step = 1.0;

    int levels() const;
    double snap(double v) const;       // clamp + round to grid
    double from_level(int level) const;
    int level_of(double v) const;
};

struct GenomeSpace {
    std::vector<GeneSpec> genes;
    bool with_order = true;  // append the Lehmer-coded rule order
};

struct Genome {
    std::vector<double> values;
    std::array<int, 4> lehmer = {0, 0, 0, 0};  // digit i in [0, 3-i]

    std::string key() const;  // cache / equality key
};

struct OutOfGrid : std::invalid_argument {
    explicit OutOfGrid(int gene)
        : std::invalid_argument("gene " + std::to_string(gene) + " outside its grid") {}
};

/// 16-gene layout: windows k1..k4, speeds Ts1..Ts4, inner distances
/// Tid1..Tid4, outer distances Tod2, Tod3, accelerations Ta1, Ta4.
/// The extended variant adds the four thresholds the printed rules never
/// read (Tod1, Tod4, Ta2, Ta3), giving 20 genes.
GenomeSpace detection_genome_space(bool extended = false);

std::array<ParamRule, 4> lehmer_decode(const std::array<int, 4>& code);
std::array<int, 4> lehmer_encode(const std::array<ParamRule, 4>& order);

/// Throws OutOfGrid if a gene is off its declared grid.
RuleParameterSet decode(const Genome& genome, bool extended = false);
Genome encode(const RuleParameterSet& params, bool extended = false);

using ObjectivePoint = std::array<double, 2>;  // maximized

/// Pareto dominance for maximization: a dominates b.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

/// SPEA2 fitness (minimized): raw strength sum plus k-NN density.
/// Nondominated individuals have fitness < 1.
std::vector<double> spea2_fitness(const std::vector<ObjectivePoint>& points);

/// Indices of the archive after SPEA2 environmental selection: all
/// nondominated, truncated by iterative nearest-neighbor removal when too
/// many, filled with the best dominated individuals when too few.
std::vector<int> environmental_selection(const std::vector<ObjectivePoint>& points,
                                         int archive_size);

Genome blx_crossover(const Genome& p1, const Genome& p2, const GenomeSpace& space,
                     double alpha, std::mt19937_64& rng);

Genome mutate(const Genome& g, const GenomeSpace& space, double probability,
              bool per_gene, std::mt19937_64& rng);

Genome random_genome(const GenomeSpace& space, std::mt19937_64& rng);

struct Spea2Config {
    int population = 200;
    int generations = 50;
    int archive_size = 100;
    double crossover_prob = 0.9;
    double mutation_prob = 0.2;
    double blx_alpha = 0.5;
    bool per_gene_mutation = false;
    std::uint64_t seed = 1;
};

struct Individual {
    Genome genome;
    ObjectivePoint objectives{0.0, 0.0};
    double fitness = 0.0;
};

struct TelemetryRecord {
    int generation = 0;
    std::vector<double> gene_mean;
    std::vector<double> gene_std;
    std::vector<ObjectivePoint> archive_points;
};

struct Telemetry {
    std::vector<TelemetryRecord> records;
    std::string to_csv() const;  // generation,gene,mean,std
};

using ObjectiveFn = std::function<ObjectivePoint(const Genome&)>;

struct OptimizationResult {
    std::vector<Individual> archive;
    Telemetry telemetry;
};

/// Generational SPEA2 loop; deterministic for a fixed seed.
OptimizationResult run_spea2(const GenomeSpace& space, const ObjectiveFn& objective,
                             const Spea2Config& config);

struct NoTrainingData : std::runtime_error {
    NoTrainingData() : std::runtime_error("no training traces supplied") {}
};

struct TrainingSet {
    std::vector<Trace> traces;
    std::vector<EventLog> truths;
};

/// (mean precision, mean recall) over the four parameterized atomic event
/// types, averaged across training traces. Results are cached per genome.
ObjectiveFn detection_objective(std::shared_ptr<const TrainingSet> data,
                                std::array<double, 4> weights = {1, 1, 1, 1},
                                DetectOptions opts = {}, int tolerance = 3,
                                bool extended = false);

/// Per-type metrics of one genome on an evaluation set.
std::map<std::string, TypeMetrics> genome_atomic_metrics(const Genome& genome,
                                                         const TrainingSet& data,
                                                         const DetectOptions& opts,
                                                         int tolerance, bool extended = false);

double macro_f_atomic(const std::map<std::string, TypeMetrics>& metrics);

struct NoArchive : std::runtime_error {
    NoArchive() : std::runtime_error("archive is empty") {}
};

/// Archive member with the best F-score per atomic event type; ties broken
/// by macro F.
std::map<std::string, Genome> best_per_event(const std::vector<Individual>& archive,
                                             const TrainingSet& eval_data,
                                             const DetectOptions& opts = {}, int tolerance = 3,
                                             bool extended = false);

/// Staircase hypervolume for maximization against a reference point.
double hypervolume(std::vector<ObjectivePoint> points, ObjectivePoint ref = {0.0, 0.0});

struct OptimizeConfig {
    Spea2Config spea2;
    std::array<double, 4> weights = {1, 1, 1, 1};
    int smoothing_width = 0;
    int tolerance = 3;
    bool extended_genome = false;

    static OptimizeConfig from_json(const std::string& text);
    static OptimizeConfig load(const std::string& path);
};

std::string archive_to_json(const std::vector<Individual>& archive, bool extended = false);
std::vector<Individual> archive_from_json(const std::string& text);

}  // namespace socev
