#include "hirz/job.hpp"

#include "hirz/cech.hpp"
#include "hirz/criterion.hpp"
#include "hirz/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hirz {

namespace {

struct RawJob {
    std::string surface;
    std::string divisor;
    std::string bundle;
    std::string compare;
    std::string table;
    std::string window;
    std::string format = "json";
    std::string oracle = "closed";
    std::string dump;
    std::string out;
};

struct Parser {
    CLI::App app{"Exact cohomology and splitting decisions for rank-2 bundles on F_n and P2", "hirzsplit"};
    RawJob raw;
    std::string batch_file;
    CLI::App* cohomology = nullptr;
    CLI::App* table = nullptr;
    CLI::App* decide = nullptr;
    CLI::App* batch = nullptr;

    Parser() {
        app.require_subcommand(1);
        cohomology = app.add_subcommand("cohomology", "h^i of a line bundle");
        table = app.add_subcommand("table", "h^i of a rank-2 bundle over a window of twists");
        decide = app.add_subcommand("decide", "decide whether a rank-2 bundle splits");
        batch = app.add_subcommand("batch", "run one job per line of a file");

        for (auto* sub : {cohomology, table, decide}) {
            sub->add_option("--surface", raw.surface, "F<n> or P2")->required();
            sub->add_option("--oracle", raw.oracle, "closed, cech or both")
                ->check(CLI::IsMember({"closed", "cech", "both"}));
            sub->add_option("--out", raw.out, "write the result to this file");
        }
        cohomology->add_option("--div", raw.divisor, "divisor a,b (F_n) or d (P2)")->required();
        cohomology->add_option("--dump", raw.dump, "write the Čech matrices to this file");
        table->add_option("--bundle", raw.bundle, "sum:a1,b1/a2,b2 or ext:a1,b1/a2,b2#seed")->required();
        auto* bundle = decide->add_option("--bundle", raw.bundle, "sum:a1,b1/a2,b2 or ext:a1,b1/a2,b2#seed");
        auto* data = decide->add_option("--table", raw.table, "cohomology table (JSON, as written by 'table')");
        bundle->excludes(data);
        data->excludes(bundle);
        table->add_option("--window", raw.window, "amin,amax,bmin,bmax or dmin,dmax");
        table->add_option("--format", raw.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        decide->add_option("--compare", raw.compare, "split bundle sum:... to compare against");
        batch->add_option("file", batch_file, "job file, '-' for stdin")->required();
    }

    JobSpec finish() const {
        if (batch->parsed()) throw ParseError("batch jobs cannot be nested");
        JobSpec job;
        job.command = cohomology->parsed() ? JobSpec::Command::Cohomology
                      : table->parsed()    ? JobSpec::Command::Table
                                           : JobSpec::Command::Decide;
        job.surface = Surface::parse(raw.surface);
        if (!raw.divisor.empty()) job.divisor = DivisorClass::parse(raw.divisor);
        if (!raw.bundle.empty()) job.bundle = BundleSpec::parse(raw.bundle);
        if (!raw.compare.empty()) job.compare = BundleSpec::parse(raw.compare);
        if (!raw.table.empty()) job.table = raw.table;
        if (!raw.window.empty()) job.window = Window::parse(raw.window);
        job.format = raw.format == "csv" ? JobSpec::Format::Csv : JobSpec::Format::Json;
        job.oracle = parse_oracle_kind(raw.oracle);
        if (!raw.dump.empty()) job.dump = raw.dump;
        if (!raw.out.empty()) job.out = raw.out;
        job.validate();
        return job;
    }
};

std::string quoted(const std::string& path) {
    if (path.find_first_of(" \t\"'") == std::string::npos) return path;
    std::string out = "\"";
    for (char c : path) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

void check_rank(const Surface& s, const DivisorClass& d, const std::string& what) {
    if (d.rank() != s.picard_rank()) throw ParseError(what + " (" + d.str() + ") does not fit " + s.name());
}

CohomologyTriple line_cohomology(const Surface& s, const DivisorClass& d, OracleKind kind) {
    if (kind == OracleKind::Closed) return line_h(s, d);
    const auto h = cech::cech_line_h(s, d);
    if (kind == OracleKind::Both && !(h == line_h(s, d))) {
        throw std::logic_error("closed form and Čech cohomology disagree for (" + d.str() + ")");
    }
    return h;
}

void write_certificate(const SplitVerdict& v, std::ostream& err) {
    for (const auto& c : v.certificate) {
        err << "certificate: h" << c.degree << "(E(" << c.twist.str() << ")) = " << c.observed
            << (c.relation == Relation::Equal ? ", expected " : ", expected at least ") << c.expected << '\n';
    }
}

int run_checked(const JobSpec& job, std::ostream& out, std::ostream& err) {
    job.validate();
    std::ofstream file;
    std::ostream* os = &out;
    if (job.out) {
        file.open(*job.out);
        if (!file) throw std::runtime_error("cannot write " + *job.out);
        os = &file;
    }
    const auto& s = job.surface;
    switch (job.command) {
        case JobSpec::Command::Cohomology: {
            const auto& d = *job.divisor;
            const auto h = line_cohomology(s, d, job.oracle);
            if (job.dump) {
                std::ofstream dump(*job.dump);
                if (!dump) throw std::runtime_error("cannot write " + *job.dump);
                cech::CechComplex(cech::ChartCover(s), d, cech::default_half_width(s, d)).write(dump);
            }
            *os << h << '\n';
            return ExitOk;
        }
        case JobSpec::Command::Table: {
            const auto table = h_table(job.bundle->build(s), job.effective_window(), job.oracle);
            if (job.format == JobSpec::Format::Csv) {
                *os << table_csv(table);
            } else {
                *os << table_json(table).dump(2) << '\n';
            }
            return ExitOk;
        }
        case JobSpec::Command::Decide: {
            CohomologyOracle q;
            if (job.table) {
                std::ifstream in(*job.table);
                if (!in) throw ParseError("cannot read " + *job.table);
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw ParseError(*job.table + ": " + e.what());
                }
                auto data = table_from_json(j);
                if (!(data.surface == s)) throw SurfaceMismatch(*job.table + " holds data for " + data.surface.name());
                q = table_oracle(std::move(data));
            } else {
                q = bundle_oracle(job.bundle->build(s), job.oracle);
            }
            SplitVerdict v;
            if (job.compare) {
                const auto f = job.compare->build(s);
                v = s.is_plane() ? theorem5_decide(q, f) : theorem1_decide(s, q, f);
            } else {
                v = hirz::decide(s, q);
            }
            *os << verdict_json(v).dump(2) << '\n';
            write_certificate(v, err);
            return exit_code(v);
        }
    }
    return ExitFailure;
}

}  // namespace

std::string BundleSpec::str() const {
    std::string out = (kind == Kind::Sum ? "sum:" : "ext:") + first.str() + '/' + second.str();
    if (seed) out += '#' + std::to_string(*seed);
    return out;
}

BundleSpec BundleSpec::parse(const std::string& text) {
    BundleSpec spec;
    std::string body;
    if (text.rfind("sum:", 0) == 0) {
        spec.kind = Kind::Sum;
        body = text.substr(4);
    } else if (text.rfind("ext:", 0) == 0) {
        spec.kind = Kind::Extension;
        body = text.substr(4);
        const auto hash = body.find('#');
        if (hash != std::string::npos) {
            const std::string digits = body.substr(hash + 1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("bad cocycle seed '" + digits + "' in '" + text + "'");
            }
            spec.seed = std::stoul(digits);
            body.resize(hash);
        }
    } else {
        throw ParseError("bundle '" + text + "' must start with sum: or ext:");
    }
    const auto slash = body.find('/');
    if (slash == std::string::npos || body.find('/', slash + 1) != std::string::npos) {
        throw ParseError("bundle '" + text + "' needs exactly two classes separated by '/'");
    }
    spec.first = DivisorClass::parse(body.substr(0, slash));
    spec.second = DivisorClass::parse(body.substr(slash + 1));
    if (spec.first.rank() != spec.second.rank()) throw ParseError("bundle '" + text + "' mixes Picard ranks");
    if (spec.kind == Kind::Sum && spec.seed) throw ParseError("a direct sum takes no cocycle seed");
    return spec;
}

Bundle2 BundleSpec::build(const Surface& s) const {
    check_rank(s, first, "bundle class");
    check_rank(s, second, "bundle class");
    if (kind == Kind::Sum) return Bundle2::sum(s, first, second);
    if (!seed) return Bundle2::extension(s, cech::ExtClass{first, second});
    return Bundle2::extension(s, cech::basis_extension(s, first, second, *seed));
}

std::string to_string(JobSpec::Command c) {
    switch (c) {
        case JobSpec::Command::Cohomology: return "cohomology";
        case JobSpec::Command::Table: return "table";
        case JobSpec::Command::Decide: return "decide";
    }
    return "cohomology";
}

void JobSpec::validate() const {
    const std::string name = to_string(command);
    auto reject = [&](bool present, const std::string& flag) {
        if (present) throw ParseError(flag + " does not apply to " + name);
    };
    auto require = [&](bool present, const std::string& flag) {
        if (!present) throw ParseError(name + " needs " + flag);
    };
    if (command == Command::Cohomology) {
        require(divisor.has_value(), "--div");
        check_rank(surface, *divisor, "divisor");
    } else {
        reject(divisor.has_value(), "--div");
        reject(dump.has_value(), "--dump");
        if (command == Command::Decide && table) {
            reject(bundle.has_value(), "--bundle together with --table");
        } else {
            require(bundle.has_value(), "--bundle");
            check_rank(surface, bundle->first, "bundle class");
        }
    }
    if (command != Command::Decide) reject(table.has_value(), "--table");
    if (command != Command::Table) {
        reject(window.has_value(), "--window");
        reject(format == Format::Csv, "--format csv");
    }
    if (command != Command::Decide) reject(compare.has_value(), "--compare");
    if (compare) {
        if (compare->kind != BundleSpec::Kind::Sum) throw ParseError("--compare needs a direct sum");
        check_rank(surface, compare->first, "comparison class");
    }
    if (window && window->ranges().size() != surface.picard_rank()) {
        throw ParseError("window " + window->str() + " does not fit " + surface.name());
    }
}

Window JobSpec::effective_window() const { return window ? *window : Window::centered(surface, 3); }

std::string JobSpec::str() const {
    std::string out = to_string(command) + " --surface " + surface.name();
    if (divisor) out += " --div " + divisor->str();
    if (bundle) out += " --bundle " + bundle->str();
    if (compare) out += " --compare " + compare->str();
    if (table) out += " --table " + quoted(*table);
    if (window) out += " --window " + window->str();
    if (command == Command::Table) out += std::string(" --format ") + (format == Format::Csv ? "csv" : "json");
    out += " --oracle " + hirz::to_string(oracle);
    if (dump) out += " --dump " + quoted(*dump);
    if (this->out) out += " --out " + quoted(*this->out);
    return out;
}

JobSpec JobSpec::parse(const std::vector<std::string>& args) {
    Parser parser;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        parser.app.parse(reversed);
    } catch (const CLI::Error& e) {
        throw ParseError(e.what());
    }
    return parser.finish();
}

JobSpec JobSpec::parse(const std::string& text) {
    Parser parser;
    try {
        parser.app.parse(text, false);
    } catch (const CLI::Error& e) {
        throw ParseError(e.what());
    }
    return parser.finish();
}

std::string job_help(const std::string& command) {
    Parser parser;
    if (command.empty()) return parser.app.help();
    const auto* sub = parser.app.get_subcommand_no_throw(command);
    return sub ? sub->help() : parser.app.help();
}

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(job, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const SurfaceMismatch& e) {
        err << "error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const PreconditionViolated& e) {
        err << "error: " << e.what() << '\n';
        return ExitUsage;
    } catch (const TruncationUnstable& e) {
        err << "error: " << e.what() << '\n';
        return ExitTruncation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitFailure;
    }
}

int run_batch(std::istream& in, std::ostream& out, std::ostream& err) {
    std::string line;
    int worst = ExitOk;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        JobSpec job;
        try {
            job = JobSpec::parse(line.substr(start));
        } catch (const ParseError& e) {
            err << "line " << number << ": error: " << e.what() << '\n';
            return ExitUsage;
        }
        out << "# " << job.str() << '\n';
        const int code = run_job(job, out, err);
        if (code > ExitInconclusive) return code;
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace hirz
