#pragma once

#include <string>

#include "trace.hpp"

namespace nf {

// Columns: frame,t_ms,detected,e_px,theta_deg,latency_ms. Floats carry 6
// significant digits; e_px is empty on missed frames; LF line endings.
void write_trace_csv(const TrackTrace& trace, const std::string& path);

// Strict parse: exact header, 6 fields per row, detected in {0,1}, e_px
// present iff detected, strictly increasing t_ms. Errors cite the line.
TrackTrace read_trace_csv(const std::string& path);

std::string format_g6(double v);

}  // namespace nf
