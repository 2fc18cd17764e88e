#include "homexp/config.hpp"

#include <cstdlib>
#include <string>

#include "homexp/errors.hpp"

namespace homexp {

Budget default_budget() {
    Budget budget;
    if (const char* env = std::getenv("HOMEXP_BUDGET")) {
        try {
            std::size_t pos = 0;
            unsigned long long cap = std::stoull(env, &pos);
            if (pos != std::string(env).size() || cap == 0)
                throw std::invalid_argument("trailing text");
            budget.map_cap = cap;
        } catch (const std::exception&) {
            throw argument_error(
                std::string("HOMEXP_BUDGET must be a positive integer, got '") +
                env + "'");
        }
    }
    return budget;
}

}  // namespace homexp
