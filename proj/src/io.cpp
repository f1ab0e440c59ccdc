#include "socev/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace socev {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, int line_no) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DataError("malformed record at line " + std::to_string(line_no) +
                        ": bad integer '" + s + "'");
    return v;
}

double parse_double(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("malformed record at line " + std::to_string(line_no) +
                        ": bad number '" + s + "'");
    }
}

}  // namespace

Trace load_trace(const std::string& path, double fps, FieldGeometry geom) {
    auto in = open_input(path);
    return load_trace(in, fps, geom);
}

Trace load_trace(std::istream& in, double fps, FieldGeometry geom) {
    struct Row {
        int frame;
        ObjectInfo info;
        Vec2 pos;
    };

    std::string line;
    int line_no = 0;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 7)
            throw DataError("malformed record at line " + std::to_string(line_no) +
                            ": expected 7 fields, got " + std::to_string(fields.size()));
        Row r;
        r.frame = parse_int(fields[0], line_no);
        r.info.id = parse_int(fields[1], line_no);
        if (fields[2] == "player") {
            r.info.cls = ObjectClass::Player;
        } else if (fields[2] == "ball") {
            r.info.cls = ObjectClass::Ball;
        } else {
            throw DataError("malformed record at line " + std::to_string(line_no) +
                            ": unknown class '" + fields[2] + "'");
        }
        auto team = team_from_name(fields[3]);
        if (!team)
            throw DataError("malformed record at line " + std::to_string(line_no) +
                            ": unknown team '" + fields[3] + "'");
        r.info.team = *team;
        r.info.goalkeeper = parse_int(fields[4], line_no) != 0;
        r.pos = {parse_double(fields[5], line_no), parse_double(fields[6], line_no)};
        if (r.frame < 0)
            throw DataError("malformed record at line " + std::to_string(line_no) +
                            ": negative frame");
        rows.push_back(r);
    }
    if (rows.empty()) throw DataError("empty positional file");

    // Roster from the first frame's rows.
    int first = rows.front().frame;
    std::vector<ObjectInfo> roster;
    for (const auto& r : rows) {
        if (r.frame != first) break;
        roster.push_back(r.info);
    }
    Trace trace(roster, fps, geom);

    size_t i = 0;
    int expected = first;
    while (i < rows.size()) {
        int f = rows[i].frame;
        if (f != expected) {
            if (f > expected)
                throw DataError("non-contiguous frames: missing frame " +
                                std::to_string(expected));
            throw DataError("frames out of order at frame " + std::to_string(f));
        }
        Frame frame;
        frame.index = f - first;
        frame.positions.assign(roster.size(), Vec2{});
        std::vector<bool> seen(roster.size(), false);
        while (i < rows.size() && rows[i].frame == f) {
            int slot;
            try {
                slot = trace.slot_of(rows[i].info.id);
            } catch (const std::exception&) {
                throw DataError("frame " + std::to_string(f) + " introduces unknown object " +
                                std::to_string(rows[i].info.id));
            }
            frame.positions[slot] = rows[i].pos;
            seen[slot] = true;
            ++i;
        }
        for (size_t s = 0; s < seen.size(); ++s) {
            if (!seen[s])
                throw DataError("missing object " + std::to_string(roster[s].id) +
                                " at frame " + std::to_string(f));
        }
        trace.append_frame(std::move(frame));
        ++expected;
    }
    return trace;
}

void save_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    save_trace(trace, out);
}
void save_trace(const Trace& trace, std::ostream& out) {
    // Five decimals: the format requires two or more, and centimeter rounding
    // at 30 fps would alias into several m/s^2 of acceleration noise.
    out << std::fixed << std::setprecision(5);
    for (int f = 0; f < trace.size(); ++f) {
        const auto& frame = trace.frame(f);
        for (size_t s = 0; s < trace.roster().size(); ++s) {
            const auto& o = trace.roster()[s];
            out << f << ',' << o.id << ','
                << (o.cls == ObjectClass::Ball ? "ball" : "player") << ','
                << team_name(o.team) << ',' << (o.goalkeeper ? 1 : 0) << ','
                << frame.positions[s].x << ',' << frame.positions[s].y << '\n';
        }
    }
}

EventLog load_events(const std::string& path) {
    auto in = open_input(path);
    return load_events(in);
}

EventLog load_events(std::istream& in) {
    EventLog log;
    std::string line;
    int line_no = 0;
    std::int64_t next_id = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError("bad JSON at line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.contains("type") || !j.contains("start") || !j.contains("end"))
            throw DataError("missing field at line " + std::to_string(line_no));
        std::string type = j["type"].get<std::string>();
        int start = j["start"].get<int>();
        int end = j["end"].get<int>();
        RoleMap role_map;
        if (j.contains("roles")) {
            for (auto& [k, v] : j["roles"].items()) role_map[k] = v.get<int>();
        }

        if (auto at = atomic_type_from_name(type); at && start == end) {
            // Check the primary role is bound for role-carrying atomic types.
            const auto& declared = atomic_roles(*at);
            if (*at != AtomicType::Goal && *at != AtomicType::BallOut) {
                for (const auto& r : declared) {
                    if (!role_map.count(r))
                        throw DataError("event at line " + std::to_string(line_no) +
                                        " missing role " + r);
                }
            }
            log.atomic.push_back({next_id++, *at, start, std::move(role_map)});
        } else if (auto ct = complex_type_from_name(type)) {
            if (start > end)
                throw DataError("interval start > end at line " + std::to_string(line_no));
            log.complex.push_back({next_id++, *ct, start, end, std::move(role_map), {}});
        } else if (atomic_type_from_name(type)) {
            throw DataError("atomic event with start != end at line " + std::to_string(line_no));
        } else {
            throw DataError("unknown event type '" + type + "' at line " +
                            std::to_string(line_no));
        }
    }
    log.sort_and_renumber();
    return log;
}

void save_events(const EventLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    save_events(log, out);
}

void save_events(const EventLog& log, std::ostream& out) {
    auto write = [&out](const std::string& type, int start, int end, const RoleMap& roles) {
        nlohmann::json j;
        j["type"] = type;
        j["start"] = start;
        j["end"] = end;
        j["roles"] = nlohmann::json::object();
        for (const auto& [k, v] : roles) j["roles"][k] = v;
        out << j.dump() << '\n';
    };
    // Interleave atomic and complex events sorted by start time.
    size_t ai = 0, ci = 0;
    while (ai < log.atomic.size() || ci < log.complex.size()) {
        bool take_atomic;
        if (ai == log.atomic.size()) {
            take_atomic = false;
        } else if (ci == log.complex.size()) {
            take_atomic = true;
        } else {
            take_atomic = log.atomic[ai].t <= log.complex[ci].start;
        }
        if (take_atomic) {
            const auto& e = log.atomic[ai++];
            write(atomic_type_name(e.type), e.t, e.t, e.roles);
        } else {
            const auto& e = log.complex[ci++];
            write(complex_type_name(e.type), e.start, e.end, e.roles);
        }
    }
}

}  // namespace socev
