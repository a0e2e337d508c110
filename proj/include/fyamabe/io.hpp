#ifndef FYAMABE_IO_HPP
#define FYAMABE_IO_HPP

// Serialization of profiles, sweep curves and reports.  Numbers are
// written with 17 significant digits so files round-trip bit-exactly;
// every format carries a schema_version field.  CSV files may carry a
// timestamp comment line, JSON files never do.

#include "fyamabe/bifurcation.hpp"
#include "fyamabe/minimize.hpp"

#include <string>
#include <vector>

namespace fyamabe::io {

inline constexpr int schema_version = 1;

enum class Format { csv, json };

/// Serialize one double with 17 significant digits.
std::string num(double x);

/// Write `text` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);

std::string profile_to_csv(const PeriodicProfile& p, bool timestamp);
std::string profile_to_json(const PeriodicProfile& p);

/// Parse a profile from either format (autodetected).
PeriodicProfile read_profile(const std::string& path);

void write_profile(const std::string& path, const PeriodicProfile& p,
                   Format fmt, bool timestamp = true);

std::string solve_summary_json(const ModelParams& mp,
                               const MinimizeResult& r);

std::string sweep_to_csv(const std::vector<SweepRecord>& recs,
                         bool timestamp);
std::string sweep_to_json(const std::vector<SweepRecord>& recs);

std::string bifurcation_to_json(const ModelParams& mp,
                                const BifurcationResult& r);

/// Rows of a kernel tabulation (see the CLI `kernel` subcommand).
struct KernelRow {
    double xi = 0.0;
    double closed = 0.0;
    double direct = 0.0;
    double rel_gap = 0.0;
    double periodized = 0.0; ///< NaN when no L was given
};
std::string kernel_table_to_csv(const std::vector<KernelRow>& rows,
                                bool with_KL, bool timestamp);
std::string kernel_table_to_json(const std::vector<KernelRow>& rows,
                                 bool with_KL);

} // namespace fyamabe::io

#endif
