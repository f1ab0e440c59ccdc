#include "socev/trace.hpp"

#include <algorithm>

namespace socev {

namespace {
constexpr double kBoundsMargin = 5.0;  // ball legitimately crosses the lines

std::map<int, int> build_slots(const std::vector<ObjectInfo>& roster) {
    std::map<int, int> slots;
    for (int i = 0; i < static_cast<int>(roster.size()); ++i) slots[roster[i].id] = i;
    return slots;
}
}  // namespace

std::string team_name(Team t) {
    switch (t) {
        case Team::Home: return "home";
        case Team::Away: return "away";
        case Team::None: return "none";
    }
    return "?";
}

std::optional<Team> team_from_name(const std::string& s) {
    if (s == "home") return Team::Home;
    if (s == "away") return Team::Away;
    if (s == "none") return Team::None;
    return std::nullopt;
}

const ObjectInfo& TraceView::object(int id) const {
    for (const auto& o : roster())
        if (o.id == id) return o;
    throw std::invalid_argument("unknown object id " + std::to_string(id));
}

int TraceView::ball_id() const {
    for (const auto& o : roster())
        if (o.cls == ObjectClass::Ball) return o.id;
    throw std::logic_error("trace has no ball");
}

std::optional<int> TraceView::goalkeeper_of(Team team) const {
    for (const auto& o : roster())
        if (o.cls == ObjectClass::Player && o.team == team && o.goalkeeper) return o.id;
    return std::nullopt;
}

Trace::Trace(std::vector<ObjectInfo> roster, double fps, FieldGeometry geom)
    : roster_(std::move(roster)), fps_(fps), geom_(geom) {
    if (fps_ <= 0) throw std::invalid_argument("fps must be positive");
    geom_.check();
    slot_by_id_ = build_slots(roster_);
}

int Trace::slot_of(int object_id) const {
    auto it = slot_by_id_.find(object_id);
    if (it == slot_by_id_.end())
        throw std::invalid_argument("unknown object id " + std::to_string(object_id));
    return it->second;
}

Vec2 Trace::position(int frame, int object_id) const {
    return frames_.at(frame).positions.at(slot_of(object_id));
}

void Trace::append_frame(Frame f) {
    if (f.positions.size() != roster_.size())
        throw std::invalid_argument("frame roster size mismatch");
    if (!frames_.empty() && f.index != frames_.back().index + 1)
        throw std::invalid_argument("frame indices must be contiguous");
    frames_.push_back(std::move(f));
}

void Trace::set_position(int frame, int object_id, Vec2 p) {
    frames_.at(frame).positions.at(slot_of(object_id)) = p;
}

SparseTrace::SparseTrace(std::vector<ObjectInfo> roster, double fps, FieldGeometry geom)
    : roster_(std::move(roster)), fps_(fps), geom_(geom) {
    slot_by_id_ = build_slots(roster_);
}

Vec2 SparseTrace::position(int frame, int object_id) const {
    auto it = frames_.find(frame);
    if (it == frames_.end())
        throw std::out_of_range("frame " + std::to_string(frame) + " not retained");
    auto slot = slot_by_id_.find(object_id);
    if (slot == slot_by_id_.end())
        throw std::invalid_argument("unknown object id " + std::to_string(object_id));
    return it->second.at(slot->second);
}

void SparseTrace::retain(int frame, const std::vector<Vec2>& positions) {
    frames_[frame] = positions;
}

std::vector<Diagnostic> validate(const Trace& trace) {
    std::vector<Diagnostic> out;
    int balls = 0;
    std::map<Team, int> keepers;
    for (const auto& o : trace.roster()) {
        if (o.cls == ObjectClass::Ball) {
            ++balls;
            if (o.team != Team::None)
                out.push_back({"BallWithTeam", -1, o.id, "ball assigned to a team"});
        } else if (o.goalkeeper) {
            ++keepers[o.team];
        }
    }
    if (balls == 0) out.push_back({"MissingBall", -1, -1, "no ball in roster"});
    if (balls > 1) out.push_back({"DuplicateBall", -1, -1, "more than one ball in roster"});
    for (Team t : {Team::Home, Team::Away}) {
        if (keepers[t] != 1)
            out.push_back({"GoalkeeperCount", -1, -1,
                           team_name(t) + " team has " + std::to_string(keepers[t]) +
                               " goalkeepers"});
    }

    const auto& geom = trace.geometry();
    for (int f = 0; f < trace.size(); ++f) {
        const auto& fr = trace.frame(f);
        if (fr.index != f)
            out.push_back({"NonContiguousFrames", f, -1, "frame index mismatch"});
        for (size_t i = 0; i < fr.positions.size(); ++i) {
            const Vec2& p = fr.positions[i];
            if (p.x < -kBoundsMargin || p.x > geom.length_m + kBoundsMargin ||
                p.y < -kBoundsMargin || p.y > geom.width_m + kBoundsMargin) {
                out.push_back({"OutOfBounds", f, trace.roster()[i].id,
                               "position outside pitch margin"});
            }
        }
    }
    return out;
}

}  // namespace socev
