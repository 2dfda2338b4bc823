#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace linkmorse {

enum class OutputFormat { Text, Json, Dot };

struct RunConfig {
    std::string lengths;
    std::string command;
    std::string stage = "final";
    int max_n = 9;
    bool force = false;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t path_cap = 1'000'000;
    std::string out;
    std::size_t cases = 24;
};

/// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace linkmorse
