#include "socev/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "socev/io.hpp"

namespace socev {

namespace {

constexpr double kGridTol = 1e-6;

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = a * 0x9E3779B97F4A7C15ULL ^ b * 0xBF58476D1CE4E5B9ULL ^
                      c * 0x94D049BB133111EBULL;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

int GeneSpec::levels() const { return static_cast<int>(std::lround((max - min) / step)) + 1; }

double GeneSpec::from_level(int level) const { return min + level * step; }

int GeneSpec::level_of(double v) const {
    return static_cast<int>(std::lround((v - min) / step));
}

double GeneSpec::snap(double v) const {
    int level = level_of(std::clamp(v, min, max));
    level = std::clamp(level, 0, levels() - 1);
    return from_level(level);
}

std::string Genome::key() const {
    std::ostringstream os;
    os.precision(12);
    for (double v : values) os << v << '|';
    for (int d : lehmer) os << d << ',';
    return os.str();
}

GenomeSpace detection_genome_space(bool extended) {
    GenomeSpace space;
    for (int i = 0; i < 4; ++i) space.genes.push_back({3, 30, 1});      // k1..k4
    for (int i = 0; i < 4; ++i) space.genes.push_back({1, 15, 1});      // Ts1..Ts4
    for (int i = 0; i < 4; ++i) space.genes.push_back({0.1, 2.0, 0.1}); // Tid1..Tid4
    space.genes.push_back({0.1, 2.0, 0.1});                             // Tod2
    space.genes.push_back({0.1, 2.0, 0.1});                             // Tod3
    space.genes.push_back({1, 30, 1});                                  // Ta1
    space.genes.push_back({1, 30, 1});                                  // Ta4
    if (extended) {
        space.genes.push_back({0.1, 2.0, 0.1});                         // Tod1
        space.genes.push_back({0.1, 2.0, 0.1});                         // Tod4
        space.genes.push_back({1, 30, 1});                              // Ta2
        space.genes.push_back({1, 30, 1});                              // Ta3
    }
    space.with_order = true;
    return space;
}

std::array<ParamRule, 4> lehmer_decode(const std::array<int, 4>& code) {
    std::vector<ParamRule> pool = {ParamRule::KickingTheBall, ParamRule::BallPossession,
                                   ParamRule::Tackle, ParamRule::BallDeflection};
    std::array<ParamRule, 4> order{};
    for (int i = 0; i < 4; ++i) {
        int d = code[i];
        if (d < 0 || d >= static_cast<int>(pool.size()))
            throw std::invalid_argument("lehmer digit out of range");
        order[i] = pool[d];
        pool.erase(pool.begin() + d);
    }
    return order;
}

std::array<int, 4> lehmer_encode(const std::array<ParamRule, 4>& order) {
    std::vector<ParamRule> pool = {ParamRule::KickingTheBall, ParamRule::BallPossession,
                                   ParamRule::Tackle, ParamRule::BallDeflection};
    std::array<int, 4> code{};
    for (int i = 0; i < 4; ++i) {
        auto it = std::find(pool.begin(), pool.end(), order[i]);
        if (it == pool.end()) throw std::invalid_argument("order is not a permutation");
        code[i] = static_cast<int>(it - pool.begin());
        pool.erase(it);
    }
    return code;
}

RuleParameterSet decode(const Genome& genome, bool extended) {
    GenomeSpace space = detection_genome_space(extended);
    if (genome.values.size() != space.genes.size())
        throw std::invalid_argument("genome has wrong length");
    for (size_t i = 0; i < genome.values.size(); ++i) {
        const auto& g = space.genes[i];
        double v = genome.values[i];
        if (v < g.min - kGridTol || v > g.max + kGridTol ||
            std::abs(g.from_level(g.level_of(v)) - v) > kGridTol)
            throw OutOfGrid(static_cast<int>(i));
    }
    RuleParameterSet p;
    const auto& v = genome.values;
    for (int i = 0; i < 4; ++i) {
        p.rules[i].window = static_cast<int>(std::lround(v[i]));
        p.rules[i].speed = v[4 + i];
        p.rules[i].inner_dist = v[8 + i];
    }
    p.rules[1].outer_dist = v[12];  // Tod2
    p.rules[2].outer_dist = v[13];  // Tod3
    p.rules[0].accel = v[14];       // Ta1
    p.rules[3].accel = v[15];       // Ta4
    if (extended) {
        p.rules[0].outer_dist = v[16];
        p.rules[3].outer_dist = v[17];
        p.rules[1].accel = v[18];
        p.rules[2].accel = v[19];
    }
    p.evaluation_order = lehmer_decode(genome.lehmer);
    return p;
}

Genome encode(const RuleParameterSet& params, bool extended) {
    Genome g;
    for (int i = 0; i < 4; ++i) g.values.push_back(params.rules[i].window);
    for (int i = 0; i < 4; ++i) g.values.push_back(params.rules[i].speed);
    for (int i = 0; i < 4; ++i) g.values.push_back(params.rules[i].inner_dist);
    g.values.push_back(params.rules[1].outer_dist);
    g.values.push_back(params.rules[2].outer_dist);
    g.values.push_back(params.rules[0].accel);
    g.values.push_back(params.rules[3].accel);
    if (extended) {
        g.values.push_back(params.rules[0].outer_dist);
        g.values.push_back(params.rules[3].outer_dist);
        g.values.push_back(params.rules[1].accel);
        g.values.push_back(params.rules[2].accel);
    }
    GenomeSpace space = detection_genome_space(extended);
    for (size_t i = 0; i < g.values.size(); ++i) {
        const auto& spec = space.genes[i];
        double v = g.values[i];
        if (v < spec.min - kGridTol || v > spec.max + kGridTol ||
            std::abs(spec.from_level(spec.level_of(v)) - v) > kGridTol)
            throw OutOfGrid(static_cast<int>(i));
        g.values[i] = spec.snap(v);
    }
    g.lehmer = lehmer_encode(params.evaluation_order);
    return g;
}

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
    return a[0] >= b[0] && a[1] >= b[1] && (a[0] > b[0] || a[1] > b[1]);
}

namespace {

std::vector<std::vector<double>> pairwise_distances(const std::vector<ObjectivePoint>& pts) {
    size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double dx = pts[i][0] - pts[j][0];
            double dy = pts[i][1] - pts[j][1];
            d[i][j] = d[j][i] = std::sqrt(dx * dx + dy * dy);
        }
    return d;
}

}  // namespace

std::vector<double> spea2_fitness(const std::vector<ObjectivePoint>& points) {
    size_t n = points.size();
    std::vector<int> strength(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && dominates(points[i], points[j])) ++strength[i];
    std::vector<double> fitness(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        for (size_t j = 0; j < n; ++j)
            if (i != j && dominates(points[j], points[i])) raw += strength[j];
        fitness[i] = raw;
    }
    if (n > 1) {
        auto dist = pairwise_distances(points);
        int k = std::clamp(static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))), 1,
                           static_cast<int>(n) - 1);
        for (size_t i = 0; i < n; ++i) {
            std::vector<double> row;
            row.reserve(n - 1);
            for (size_t j = 0; j < n; ++j)
                if (i != j) row.push_back(dist[i][j]);
            std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
            fitness[i] += 1.0 / (row[k - 1] + 2.0);
        }
    } else if (n == 1) {
        fitness[0] += 0.5;  // density term with no neighbors
    }
    return fitness;
}

std::vector<int> environmental_selection(const std::vector<ObjectivePoint>& points,
                                         int archive_size) {
    auto fitness = spea2_fitness(points);
    std::vector<int> nondom, dominated;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        (fitness[i] < 1.0 ? nondom : dominated).push_back(i);

    if (static_cast<int>(nondom.size()) > archive_size) {
        // Truncation: repeatedly drop the member with the lexicographically
        // smallest sorted distance vector to the rest, preserving boundaries.
        std::vector<int> cur = nondom;
        while (static_cast<int>(cur.size()) > archive_size) {
            size_t m = cur.size();
            std::vector<std::vector<double>> rows(m);
            for (size_t i = 0; i < m; ++i) {
                rows[i].reserve(m - 1);
                for (size_t j = 0; j < m; ++j) {
                    if (i == j) continue;
                    double dx = points[cur[i]][0] - points[cur[j]][0];
                    double dy = points[cur[i]][1] - points[cur[j]][1];
                    rows[i].push_back(std::sqrt(dx * dx + dy * dy));
                }
                std::sort(rows[i].begin(), rows[i].end());
            }
            size_t victim = 0;
            for (size_t i = 1; i < m; ++i)
                if (rows[i] < rows[victim]) victim = i;
            cur.erase(cur.begin() + victim);
        }
        return cur;
    }
    std::sort(dominated.begin(), dominated.end(),
              [&](int a, int b) { return fitness[a] < fitness[b]; });
    std::vector<int> out = nondom;
    for (int idx : dominated) {
        if (static_cast<int>(out.size()) >= archive_size) break;
        out.push_back(idx);
    }
    return out;
}

Genome random_genome(const GenomeSpace& space, std::mt19937_64& rng) {
    Genome g;
    for (const auto& spec : space.genes) {
        std::uniform_int_distribution<int> d(0, spec.levels() - 1);
        g.values.push_back(spec.from_level(d(rng)));
    }
    if (space.with_order) {
        for (int i = 0; i < 4; ++i) {
            std::uniform_int_distribution<int> d(0, 3 - i);
            g.lehmer[i] = d(rng);
        }
    }
    return g;
}

Genome blx_crossover(const Genome& p1, const Genome& p2, const GenomeSpace& space,
                     double alpha, std::mt19937_64& rng) {
    Genome child;
    for (size_t i = 0; i < space.genes.size(); ++i) {
        double lo = std::min(p1.values[i], p2.values[i]);
        double hi = std::max(p1.values[i], p2.values[i]);
        double d = hi - lo;
        std::uniform_real_distribution<double> u(lo - alpha * d, hi + alpha * d);
        child.values.push_back(space.genes[i].snap(u(rng)));
    }
    if (space.with_order) {
        std::uniform_int_distribution<int> coin(0, 1);
        child.lehmer = coin(rng) == 0 ? p1.lehmer : p2.lehmer;
    }
    return child;
}

Genome mutate(const Genome& g, const GenomeSpace& space, double probability, bool per_gene,
              std::mt19937_64& rng) {
    Genome out = g;
    int slots = static_cast<int>(space.genes.size()) + (space.with_order ? 1 : 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto randomize = [&](int slot) {
        if (slot < static_cast<int>(space.genes.size())) {
            std::uniform_int_distribution<int> d(0, space.genes[slot].levels() - 1);
            out.values[slot] = space.genes[slot].from_level(d(rng));
        } else {
            for (int i = 0; i < 4; ++i) {
                std::uniform_int_distribution<int> d(0, 3 - i);
                out.lehmer[i] = d(rng);
            }
        }
    };
    if (per_gene) {
        for (int s = 0; s < slots; ++s)
            if (u(rng) < probability) randomize(s);
    } else if (u(rng) < probability) {
        std::uniform_int_distribution<int> pick(0, slots - 1);
        randomize(pick(rng));
    }
    return out;
}

std::string Telemetry::to_csv() const {
    std::ostringstream os;
    os << "generation,gene,mean,std\n";
    for (const auto& rec : records)
        for (size_t g = 0; g < rec.gene_mean.size(); ++g)
            os << rec.generation << ',' << g << ',' << rec.gene_mean[g] << ','
               << rec.gene_std[g] << '\n';
    return os.str();
}

OptimizationResult run_spea2(const GenomeSpace& space, const ObjectiveFn& objective,
                             const Spea2Config& config) {
    if (config.population <= 0) throw std::invalid_argument("population must be positive");

    std::vector<Individual> pop(config.population);
    for (int i = 0; i < config.population; ++i) {
        std::mt19937_64 rng(mix(config.seed, 0, static_cast<std::uint64_t>(i)));
        pop[i].genome = random_genome(space, rng);
        pop[i].objectives = objective(pop[i].genome);
    }

    std::vector<Individual> archive;
    OptimizationResult result;

    // Generation 0 scores and selects the random initial population, so
    // generations == 0 still yields a valid archive; each later iteration
    // mates, mutates and re-selects.
    for (int gen = 0; gen <= config.generations; ++gen) {
        std::vector<Individual> uni = pop;
        uni.insert(uni.end(), archive.begin(), archive.end());
        std::vector<ObjectivePoint> points;
        points.reserve(uni.size());
        for (const auto& ind : uni) points.push_back(ind.objectives);
        auto fitness = spea2_fitness(points);
        for (size_t i = 0; i < uni.size(); ++i) uni[i].fitness = fitness[i];
        auto sel = environmental_selection(points, config.archive_size);
        archive.clear();
        for (int idx : sel) archive.push_back(uni[idx]);

        TelemetryRecord rec;
        rec.generation = gen;
        size_t n_genes = space.genes.size();
        rec.gene_mean.assign(n_genes, 0.0);
        rec.gene_std.assign(n_genes, 0.0);
        for (const auto& ind : archive)
            for (size_t g = 0; g < n_genes; ++g) rec.gene_mean[g] += ind.genome.values[g];
        for (size_t g = 0; g < n_genes; ++g) rec.gene_mean[g] /= archive.size();
        for (const auto& ind : archive)
            for (size_t g = 0; g < n_genes; ++g) {
                double d = ind.genome.values[g] - rec.gene_mean[g];
                rec.gene_std[g] += d * d;
            }
        for (size_t g = 0; g < n_genes; ++g)
            rec.gene_std[g] = std::sqrt(rec.gene_std[g] / archive.size());
        for (const auto& ind : archive) rec.archive_points.push_back(ind.objectives);
        result.telemetry.records.push_back(std::move(rec));

        if (gen == config.generations) break;

        std::vector<Individual> next(config.population);
        for (int i = 0; i < config.population; ++i) {
            std::mt19937_64 rng(
                mix(config.seed, static_cast<std::uint64_t>(gen + 1), static_cast<std::uint64_t>(i)));
            auto tournament = [&]() -> const Individual& {
                std::uniform_int_distribution<int> pick(0, static_cast<int>(archive.size()) - 1);
                const Individual& a = archive[pick(rng)];
                const Individual& b = archive[pick(rng)];
                return a.fitness <= b.fitness ? a : b;
            };
            const Individual& p1 = tournament();
            const Individual& p2 = tournament();
            std::uniform_real_distribution<double> u(0.0, 1.0);
            Genome child =
                u(rng) < config.crossover_prob
                    ? blx_crossover(p1.genome, p2.genome, space, config.blx_alpha, rng)
                    : p1.genome;
            child = mutate(child, space, config.mutation_prob, config.per_gene_mutation, rng);
            next[i].genome = std::move(child);
            next[i].objectives = objective(next[i].genome);
        }
        pop = std::move(next);
    }
    result.archive = std::move(archive);
    return result;
}

std::map<std::string, TypeMetrics> genome_atomic_metrics(const Genome& genome,
                                                         const TrainingSet& data,
                                                         const DetectOptions& opts,
                                                         int tolerance, bool extended) {
    RuleParameterSet params = decode(genome, extended);
    static const AtomicType kTypes[] = {AtomicType::KickingTheBall, AtomicType::BallPossession,
                                        AtomicType::Tackle, AtomicType::BallDeflection};
    std::map<std::string, TypeMetrics> out;
    for (auto t : kTypes) out["atomic/" + atomic_type_name(t)] = {};
    for (size_t i = 0; i < data.traces.size(); ++i) {
        auto detected = detect_atomic(data.traces[i], params, opts);
        for (auto type : kTypes) {
            std::vector<int> d, t;
            for (const auto& e : detected)
                if (e.type == type) d.push_back(e.t);
            for (const auto& e : data.truths[i].atomic)
                if (e.type == type) t.push_back(e.t);
            std::sort(d.begin(), d.end());
            std::sort(t.begin(), t.end());
            int matched = static_cast<int>(match_points(d, t, tolerance).size());
            auto& m = out["atomic/" + atomic_type_name(type)];
            m.tp += matched;
            m.fp += static_cast<int>(d.size()) - matched;
            m.fn += static_cast<int>(t.size()) - matched;
        }
    }
    for (auto& [k, m] : out) m.finalize();
    return out;
}

double macro_f_atomic(const std::map<std::string, TypeMetrics>& metrics) {
    if (metrics.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [k, m] : metrics) sum += m.f1;
    return sum / metrics.size();
}

ObjectiveFn detection_objective(std::shared_ptr<const TrainingSet> data,
                                std::array<double, 4> weights, DetectOptions opts, int tolerance,
                                bool extended) {
    if (!data || data->traces.empty() || data->traces.size() != data->truths.size())
        throw NoTrainingData();
    double wsum = weights[0] + weights[1] + weights[2] + weights[3];
    if (wsum <= 0) throw std::invalid_argument("weights must not all be zero");
    auto cache = std::make_shared<std::map<std::string, ObjectivePoint>>();
    auto mutex = std::make_shared<std::mutex>();
    return [=](const Genome& genome) -> ObjectivePoint {
        std::string key = genome.key();
        {
            std::lock_guard<std::mutex> lock(*mutex);
            auto it = cache->find(key);
            if (it != cache->end()) return it->second;
        }
        auto metrics = genome_atomic_metrics(genome, *data, opts, tolerance, extended);
        static const AtomicType kTypes[] = {AtomicType::KickingTheBall,
                                            AtomicType::BallPossession, AtomicType::Tackle,
                                            AtomicType::BallDeflection};
        ObjectivePoint point{0.0, 0.0};
        for (int i = 0; i < 4; ++i) {
            const auto& m = metrics.at("atomic/" + atomic_type_name(kTypes[i]));
            point[0] += weights[i] * m.precision;
            point[1] += weights[i] * m.recall;
        }
        point[0] /= wsum;
        point[1] /= wsum;
        {
            std::lock_guard<std::mutex> lock(*mutex);
            (*cache)[key] = point;
        }
        return point;
    };
}

std::map<std::string, Genome> best_per_event(const std::vector<Individual>& archive,
                                             const TrainingSet& eval_data,
                                             const DetectOptions& opts, int tolerance,
                                             bool extended) {
    if (archive.empty()) throw NoArchive();
    struct Best {
        double f1 = -1.0;
        double macro = -1.0;
        const Genome* genome = nullptr;
    };
    std::map<std::string, Best> best;
    for (const auto& ind : archive) {
        auto metrics = genome_atomic_metrics(ind.genome, eval_data, opts, tolerance, extended);
        double macro = macro_f_atomic(metrics);
        for (const auto& [key, m] : metrics) {
            auto& b = best[key];
            if (m.f1 > b.f1 || (m.f1 == b.f1 && macro > b.macro)) {
                b.f1 = m.f1;
                b.macro = macro;
                b.genome = &ind.genome;
            }
        }
    }
    std::map<std::string, Genome> out;
    for (const auto& [key, b] : best)
        if (b.genome) out[key] = *b.genome;
    return out;
}

double hypervolume(std::vector<ObjectivePoint> points, ObjectivePoint ref) {
    std::sort(points.begin(), points.end(),
              [](const ObjectivePoint& a, const ObjectivePoint& b) { return a[0] > b[0]; });
    double hv = 0.0;
    double cur_y = ref[1];
    for (const auto& p : points) {
        if (p[0] <= ref[0]) continue;
        if (p[1] > cur_y) {
            hv += (p[0] - ref[0]) * (p[1] - cur_y);
            cur_y = p[1];
        }
    }
    return hv;
}

OptimizeConfig OptimizeConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad optimizer config: ") + e.what());
    }
    OptimizeConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    get("population", c.spea2.population);
    get("generations", c.spea2.generations);
    get("archive_size", c.spea2.archive_size);
    get("crossover_prob", c.spea2.crossover_prob);
    get("mutation_prob", c.spea2.mutation_prob);
    get("blx_alpha", c.spea2.blx_alpha);
    get("per_gene_mutation", c.spea2.per_gene_mutation);
    get("seed", c.spea2.seed);
    get("smoothing_width", c.smoothing_width);
    get("tolerance", c.tolerance);
    get("extended_genome", c.extended_genome);
    if (j.contains("weights")) {
        auto w = j["weights"];
        if (w.size() != 4) throw DataError("weights must have four entries");
        for (int i = 0; i < 4; ++i) c.weights[i] = w[i].get<double>();
    }
    return c;
}

OptimizeConfig OptimizeConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string archive_to_json(const std::vector<Individual>& archive, bool extended) {
    nlohmann::json j;
    j["extended"] = extended;
    j["archive"] = nlohmann::json::array();
    for (const auto& ind : archive) {
        nlohmann::json e;
        e["genome"] = ind.genome.values;
        e["lehmer"] = ind.genome.lehmer;
        e["objectives"] = ind.objectives;
        e["fitness"] = ind.fitness;
        RuleParameterSet p = decode(ind.genome, extended);
        e["params"] = nlohmann::json::parse(p.to_json());
        j["archive"].push_back(std::move(e));
    }
    return j.dump(2);
}

std::vector<Individual> archive_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad archive JSON: ") + e.what());
    }
    std::vector<Individual> out;
    for (const auto& e : j.at("archive")) {
        Individual ind;
        ind.genome.values = e.at("genome").get<std::vector<double>>();
        auto lehmer = e.at("lehmer").get<std::vector<int>>();
        if (lehmer.size() != 4) throw DataError("lehmer code must have four digits");
        std::copy(lehmer.begin(), lehmer.end(), ind.genome.lehmer.begin());
        ind.objectives[0] = e.at("objectives")[0].get<double>();
        ind.objectives[1] = e.at("objectives")[1].get<double>();
        if (e.contains("fitness")) ind.fitness = e.at("fitness").get<double>();
        out.push_back(std::move(ind));
    }
    return out;
}

}  // namespace socev
