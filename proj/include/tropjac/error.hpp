// Error types and resource guards shared across the toolkit.
#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tropjac {

/** Malformed or semantically invalid input (bad JSON, tree graph, negative length...). */
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

/** A computation was rejected because it exceeds a configured size guard. */
class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/** An internal cross-check failed (e.g. boundary-of-boundary nonzero). */
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Size guards. Defaults follow the documented limits; TROPJAC_GUARDS overrides,
 *  format "b_voronoi=4,b_arrangement=3,d=4,oracle=10000" (any subset of keys). */
struct Guards {
    int max_b_voronoi = 4;
    int max_b_arrangement = 3;
    int max_d = 4;
    long max_oracle_vertices = 10000;

    static Guards from_env() {
        Guards g;
        const char* env = std::getenv("TROPJAC_GUARDS");
        if (!env) return g;
        std::string s(env);
        size_t pos = 0;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            std::string item = s.substr(pos, comma - pos);
            size_t eq = item.find('=');
            if (eq != std::string::npos) {
                std::string key = item.substr(0, eq);
                long val = std::strtol(item.c_str() + eq + 1, nullptr, 10);
                if (key == "b_voronoi") g.max_b_voronoi = static_cast<int>(val);
                else if (key == "b_arrangement") g.max_b_arrangement = static_cast<int>(val);
                else if (key == "d") g.max_d = static_cast<int>(val);
                else if (key == "oracle") g.max_oracle_vertices = val;
            }
            pos = comma + 1;
        }
        return g;
    }
};

} // namespace tropjac
