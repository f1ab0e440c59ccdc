#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socev/geometry.hpp"

namespace socev {

enum class Team { Home, Away, None };
enum class ObjectClass { Player, Ball };

std::string team_name(Team t);
std::optional<Team> team_from_name(const std::string& s);

struct ObjectInfo {
    int id = 0;
    ObjectClass cls = ObjectClass::Player;
    Team team = Team::None;
    bool goalkeeper = false;
};

struct Frame {
    int index = 0;
    std::vector<Vec2> positions;  // aligned with Trace roster order
};

/// Read-only positional access shared by the full in-memory trace and the
/// sparse snapshots kept by the streaming pipeline.
class TraceView {
public:
    virtual ~TraceView() = default;
    virtual double fps() const = 0;
    virtual const FieldGeometry& geometry() const = 0;
    virtual const std::vector<ObjectInfo>& roster() const = 0;
    virtual bool has_frame(int frame) const = 0;
    virtual Vec2 position(int frame, int object_id) const = 0;

    const ObjectInfo& object(int id) const;
    int ball_id() const;
    std::optional<int> goalkeeper_of(Team team) const;
};

class Trace : public TraceView {
public:
    Trace() = default;
    Trace(std::vector<ObjectInfo> roster, double fps, FieldGeometry geom = {});

    double fps() const override { return fps_; }
    const FieldGeometry& geometry() const override { return geom_; }
    const std::vector<ObjectInfo>& roster() const override { return roster_; }
    bool has_frame(int frame) const override {
        return frame >= 0 && frame < static_cast<int>(frames_.size());
    }
    Vec2 position(int frame, int object_id) const override;

    int size() const { return static_cast<int>(frames_.size()); }
    const Frame& frame(int i) const { return frames_.at(i); }
    int slot_of(int object_id) const;

    void append_frame(Frame f);
    void set_position(int frame, int object_id, Vec2 p);

private:
    std::vector<ObjectInfo> roster_;
    std::map<int, int> slot_by_id_;
    std::vector<Frame> frames_;
    double fps_ = 30.0;
    FieldGeometry geom_;
};

/// Frames retained around event timestamps; position() outside the retained
/// set throws.
class SparseTrace : public TraceView {
public:
    SparseTrace(std::vector<ObjectInfo> roster, double fps, FieldGeometry geom = {});

    double fps() const override { return fps_; }
    const FieldGeometry& geometry() const override { return geom_; }
    const std::vector<ObjectInfo>& roster() const override { return roster_; }
    bool has_frame(int frame) const override { return frames_.count(frame) > 0; }
    Vec2 position(int frame, int object_id) const override;

    void retain(int frame, const std::vector<Vec2>& positions);

private:
    std::vector<ObjectInfo> roster_;
    std::map<int, int> slot_by_id_;
    std::map<int, std::vector<Vec2>> frames_;
    double fps_ = 30.0;
    FieldGeometry geom_;
};

struct Diagnostic {
    std::string code;  // OutOfBounds, DuplicateBall, ...
    int frame = -1;
    int object_id = -1;
    std::string message;
};

/// Empty result iff all Trace invariants hold.
std::vector<Diagnostic> validate(const Trace& trace);

}  // namespace socev
