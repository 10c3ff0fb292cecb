#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqn {

/// Ordered list of distinct coordinate names. Phase-space charts of n degrees
/// of freedom use q1..qn, p1..pn. Immutable and cheap to copy.
class Chart {
public:
    explicit Chart(std::vector<std::string> names);

    static Chart phase_space(int n);

    std::size_t dim() const { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<std::size_t> index(std::string_view name) const;

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

}  // namespace pqn
