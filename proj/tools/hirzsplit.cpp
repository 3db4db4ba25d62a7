#include "hirz/errors.hpp"
#include "hirz/job.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    using namespace hirz;
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto asks = [&](const std::string& flag) { return std::find(args.begin(), args.end(), flag) != args.end(); };

    if (args.empty()) {
        std::cerr << job_help();
        return ExitUsage;
    }
    if (asks("-h") || asks("--help")) {
        std::cout << job_help(args.front().rfind('-', 0) == 0 ? "" : args.front());
        return ExitOk;
    }
    if (args.front() == "--version") {
        std::cout << "hirzsplit 0.1.0\n";
        return ExitOk;
    }
    if (args.front() == "batch") {
        if (args.size() != 2) {
            std::cerr << "usage: hirzsplit batch FILE\n";
            return ExitUsage;
        }
        if (args[1] == "-") return run_batch(std::cin, std::cout, std::cerr);
        std::ifstream in(args[1]);
        if (!in) {
            std::cerr << "error: cannot read " << args[1] << '\n';
            return ExitUsage;
        }
        return run_batch(in, std::cout, std::cerr);
    }

    JobSpec job;
    try {
        job = JobSpec::parse(args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\nrun 'hirzsplit --help' for usage\n";
        return ExitUsage;
    }
    return run_job(job, std::cout, std::cerr);
}
