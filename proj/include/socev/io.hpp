#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "socev/events.hpp"
#include "socev/trace.hpp"

namespace socev {

/// Malformed or inconsistent input data (CSV / JSONL).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Positional CSV: one row per object per frame,
//   frame,object_id,class,team,goalkeeper,x,y
// class in {player,ball}, team in {home,away,none}, goalkeeper in {0,1}.
Trace load_trace(const std::string& path, double fps = 30.0, FieldGeometry geom = {});
Trace load_trace(std::istream& in, double fps = 30.0, FieldGeometry geom = {});
void save_trace(const Trace& trace, const std::string& path);
void save_trace(const Trace& trace, std::ostream& out);

// Event JSONL: one object per line,
//   {"type": str, "start": int, "end": int, "roles": {str: int}}
EventLog load_events(const std::string& path);
EventLog load_events(std::istream& in);
void save_events(const EventLog& log, const std::string& path);
void save_events(const EventLog& log, std::ostream& out);

}  // namespace socev
