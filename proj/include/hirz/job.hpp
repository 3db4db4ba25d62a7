#pragma once

// One unit of work for the command line tool. The textual form is the command
// line without the program name, e.g.
//     decide --surface F1 --bundle ext:0,-2/0,0#0 --oracle cech
// and JobSpec::parse(job.str()) == job for every valid job.

#include "hirz/bundles.hpp"
#include "hirz/picard.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hirz {

/// "sum:a1,b1/a2,b2", "ext:sub/quot" (zero class) or "ext:sub/quot#seed",
/// where seed indexes the computed basis of H¹(O(sub - quot)).
struct BundleSpec {
    enum class Kind { Sum, Extension };

    Kind kind = Kind::Sum;
    DivisorClass first;   // first summand, or sub
    DivisorClass second;  // second summand, or quot
    std::optional<std::size_t> seed;

    std::string str() const;
    static BundleSpec parse(const std::string& text);
    Bundle2 build(const Surface& s) const;

    friend bool operator==(const BundleSpec&, const BundleSpec&) = default;
};

struct JobSpec {
    enum class Command { Cohomology, Table, Decide };
    enum class Format { Json, Csv };

    Command command = Command::Cohomology;
    Surface surface = Surface::hirzebruch(0);
    std::optional<DivisorClass> divisor;
    std::optional<BundleSpec> bundle;
    std::optional<BundleSpec> compare;
    std::optional<std::string> table;  // decide from a table file instead of a presentation
    std::optional<Window> window;
    Format format = Format::Json;
    OracleKind oracle = OracleKind::Closed;
    std::optional<std::string> dump;
    std::optional<std::string> out;

    /// Throws ParseError if a field required by the command is missing or does not fit the surface.
    void validate() const;
    /// The window of a table job, [-3, 3]^rank if none was given.
    Window effective_window() const;

    std::string str() const;
    static JobSpec parse(const std::string& text);
    static JobSpec parse(const std::vector<std::string>& args);

    friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

std::string to_string(JobSpec::Command c);

enum ExitCode : int {
    ExitSplit = 0,
    ExitOk = 0,
    ExitNotSplit = 1,
    ExitInconclusive = 2,
    ExitUsage = 3,
    ExitTruncation = 4,
    ExitFailure = 5,
};

/// Runs a validated job, writing results to out (or the job's output file) and
/// diagnostics to err. Returns the exit code; engine errors are mapped, never thrown.
int run_job(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Usage text of the whole tool, or of one subcommand.
std::string job_help(const std::string& command = "");

/// One job per non-empty, non-comment line, each preceded by "# <job>". Stops at
/// the first exit code > 2; otherwise returns the largest verdict code seen.
int run_batch(std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hirz
