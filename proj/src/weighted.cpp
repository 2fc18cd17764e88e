#include "homexp/weighted.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace homexp::detail {

bool next_weight_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](unsigned char c) { return std::isspace(c); };
        if (std::all_of(line.begin(), line.end(), is_space)) continue;
        return true;
    }
    return false;
}

}  // namespace homexp::detail
