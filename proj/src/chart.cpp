#include "pqn/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pqn/errors.hpp"

namespace pqn {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

}  // namespace

Chart::Chart(std::vector<std::string> names) {
    if (names.empty()) throw DomainError("chart needs at least one coordinate");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!valid_identifier(n)) throw DomainError("bad coordinate name: '" + n + "'");
        if (!seen.insert(n).second) throw DomainError("duplicate coordinate name: '" + n + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

Chart Chart::phase_space(int n) {
    if (n < 1) throw DomainError("phase space needs n >= 1");
    std::vector<std::string> names;
    names.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    return Chart(std::move(names));
}

std::optional<std::size_t> Chart::index(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

}  // namespace pqn
