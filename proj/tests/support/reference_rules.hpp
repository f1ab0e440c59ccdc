#pragma once

// Hand-coded implementation of the built-in complex-event rules, written as
// plain loops with its own geometry helpers. Used as the differential oracle
// for the rule-DSL engine: both sides must produce the same instance sets on
// every generated trace.

#include <vector>

#include "socev/complex.hpp"
#include "socev/events.hpp"

namespace refimpl {

std::vector<socev::IntervalEvent> reference_complex(const std::vector<socev::AtomicEvent>& atoms,
                                                    const socev::TraceView& view,
                                                    int merge_gap = 5);

}  // namespace refimpl
