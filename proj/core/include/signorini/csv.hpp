#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "signorini/adapt.hpp"
#include "signorini/estimator.hpp"

namespace signorini {

inline constexpr const char* kRecordCsvHeader =
    "step,N,eta,S,eta_plus_S,h_max,active_points,walltime_ms,exact_h1_error";

void write_record_csv_header(std::ostream& out);
void append_record_csv(std::ostream& out, const ConvergenceRecord& rec);
void write_records_csv(std::ostream& out, std::span<const ConvergenceRecord> records);

std::vector<ConvergenceRecord> read_records_csv(std::istream& in);

/// Indicator dump: an element section (id, eta_K, osc_K, E_K) followed by a
/// boundary-edge section (id, class, indicator value).
void write_indicators_csv(std::ostream& out, const Mesh& m, const IndicatorSet& ind);

}  // namespace signorini
