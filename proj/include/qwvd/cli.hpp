#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwvd/convcorr.hpp"
#include "qwvd/grid.hpp"
#include "qwvd/olct.hpp"
#include "qwvd/verify.hpp"

namespace qwvd::cli {

enum ExitCode : int { kOk = 0, kIdentityFailed = 1, kUsage = 2, kIo = 3 };

/// Bad flag values or combinations; maps to exit status 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Unwritable output or unreadable input; maps to exit status 3.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  // wvd | qolct | convolve | correlate | verify | sweep
    std::string theorem;  // verify target or sweep --theorem; "all" runs every theorem
    std::string signal_f = "coeff=1,0,0,0";
    std::string signal_g = "coeff=1,0,0,0";
    std::string signal_csv;  // optional sampled input for qolct
    ParamPair params;
    GridSet grids;
    TheoremVariant variant;
    bool sweep_variants = false;
    std::vector<double> scales{1.0};
    bool serial = false;
    std::string out_dir = "qwvd_out";
    std::optional<Vec2> t;
    std::optional<Vec2> u;
    std::string slice;    // "t=a,b" or "u=a,b"
    std::string heatmap;  // PGM path, relative paths land in out_dir
    std::string csv;      // CSV path override, same rule

    nlohmann::ordered_json to_json() const;
};

/// Parses argv; `--config file.json` is merged under the flags. Throws
/// UsageError (or DeterminantError) on invalid input. Returns std::nullopt
/// when help was requested and printed.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes the configured command and returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error-to-exit-status mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwvd::cli
