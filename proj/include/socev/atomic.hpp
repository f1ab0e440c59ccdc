#pragma once

#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <string>

#include "socev/events.hpp"
#include "socev/features.hpp"
#include "socev/trace.hpp"

namespace socev {

/// The four threshold-parameterized atomic rules, in canonical order.
enum class ParamRule { KickingTheBall = 0, BallPossession = 1, Tackle = 2, BallDeflection = 3 };

std::string param_rule_name(ParamRule r);
std::optional<ParamRule> param_rule_from_name(const std::string& s);

struct RuleThresholds {
    double inner_dist = 1.0;  // T_id, meters
    double outer_dist = 1.5;  // T_od, meters (possession / tackle)
    double speed = 6.0;       // T_s, m/s
    double accel = 10.0;      // T_a, m/s^2 (kicking / deflection)
    int window = 5;           // k, frames
};

struct RuleParameterSet {
    std::array<RuleThresholds, 4> rules;  // indexed by ParamRule
    std::array<ParamRule, 4> evaluation_order = {
        ParamRule::KickingTheBall, ParamRule::BallPossession,
        ParamRule::Tackle, ParamRule::BallDeflection};

    const RuleThresholds& of(ParamRule r) const { return rules[static_cast<int>(r)]; }
    RuleThresholds& of(ParamRule r) { return rules[static_cast<int>(r)]; }

    int max_window() const;
    std::string to_json() const;
    static RuleParameterSet from_json(const std::string& text);
    static RuleParameterSet load(const std::string& path);
    void save(const std::string& path) const;
};

struct DetectOptions {
    int smoothing_width = 0;       // centered moving average on positions
    bool require_moving = false;   // optional extra conjunct on BallPossession
    int scorer_lookback = 150;     // frames searched for the Goal scorer
};

/// Incremental atomic detector. Frames are pushed in order; events for frame
/// t are emitted once the look-ahead window [t, t + max_window + 2] is
/// available (or at finish(), with last-value extension of the kinematics).
/// Memory stays bounded by the window size.
class StreamingAtomicDetector {
public:
    using FrameCallback = std::function<void(int frame, const std::vector<Vec2>& positions)>;

    StreamingAtomicDetector(std::vector<ObjectInfo> roster, double fps,
                            FieldGeometry geom, RuleParameterSet params,
                            DetectOptions opts = {});

    void push(const Frame& frame);
    void finish();

    const std::vector<AtomicEvent>& events() const { return events_; }
    std::vector<AtomicEvent> take_events() { return std::move(events_); }

    /// Invoked for each frame at which an event fired (with the frames just
    /// after it, needed by downstream spatial predicates).
    void set_frame_callback(FrameCallback cb) { frame_cb_ = std::move(cb); }

private:
    struct Buffered {
        int index;
        std::vector<Vec2> raw;
        std::vector<Vec2> smooth;     // valid once smoothing window complete
        bool smooth_ready = false;
    };

    void advance();
    void evaluate_frame(int t);
    const std::vector<Vec2>& positions_at(int t) const;
    double ball_speed(int t) const;
    double ball_accel(int t) const;
    Vec2 ball_pos(int t) const;
    double dist_to_ball(int slot, int t) const;
    std::pair<int, double> nearest_player_slot(int t) const;

    std::optional<AtomicEvent> rule_kicking(int t);
    std::optional<AtomicEvent> rule_possession(int t);
    std::optional<AtomicEvent> rule_tackle(int t);
    std::optional<AtomicEvent> rule_deflection(int t);
    void boundary_rules(int t);  // BallOut + Goal, parameter free
    void emit(AtomicEvent ev);

    std::vector<ObjectInfo> roster_;
    double fps_;
    FieldGeometry geom_;
    RuleParameterSet params_;
    DetectOptions opts_;

    int ball_slot_ = -1;
    std::deque<Buffered> buf_;            // frames [first_buffered_, ...]
    int first_buffered_ = 0;
    int next_frame_ = 0;                  // expected next push index
    int next_eval_ = 0;                   // next frame to evaluate
    bool finished_ = false;
    bool ball_was_inside_ = true;
    std::array<std::optional<std::pair<int, int>>, 2> last_kick_;  // per team: (frame, player)
    int last_kick_qualify_ = -2;     // kick refractory: most recent frame whose clauses held
    int last_deflect_qualify_ = -2;  // same for deflection
    std::int64_t next_id_ = 1;
    std::vector<AtomicEvent> events_;
    FrameCallback frame_cb_;

    std::deque<double> speeds_;  // ball speed per frame, from first_buffered_
    std::vector<Vec2> scratch_;
};

/// Batch detection; defined as streaming ingestion of the whole trace.
std::vector<AtomicEvent> detect_atomic(const Trace& trace, const RuleParameterSet& params,
                                       const DetectOptions& opts = {});

/// Reference parameter set used by the scenario generator; scenarios are
/// scripted to be unambiguous under these values.
RuleParameterSet reference_parameters();

}  // namespace socev
