#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"

namespace wignerkin::cli {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;  // 0 = take the config's seed
    int threads = 0;
    bool quiet = false;
};

int cmd_simulate(const Config& cfg, const CommonOptions& opt);
int cmd_verify_identities(const Config& cfg, const CommonOptions& opt);
int cmd_verify_estimates(const Config& cfg, const CommonOptions& opt);
int cmd_probe(const Config& cfg, const CommonOptions& opt);
int cmd_roundtrip(const Config& cfg, const CommonOptions& opt);
int cmd_sweep(const Config& cfg, const CommonOptions& opt);

}  // namespace wignerkin::cli
