#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "fotpi/rational.hpp"

namespace fotpi {

/// A term is either a plain random-variable reference or a join XY of two or
/// more distinct variables. Joins are kept flattened, duplicate-free and
/// sorted, so structural equality coincides with equality up to the
/// associativity/commutativity/idempotence of the join.
class Term {
public:
    Term() = default;

    static Term var(std::string name) {
        Term t;
        t.names_.push_back(std::move(name));
        return t;
    }

    /// Join of the given parts; flattens nested joins and deduplicates.
    static Term join(const std::vector<Term>& parts) {
        Term t;
        for (const auto& p : parts)
            t.names_.insert(t.names_.end(), p.names_.begin(), p.names_.end());
        std::sort(t.names_.begin(), t.names_.end());
        t.names_.erase(std::unique(t.names_.begin(), t.names_.end()), t.names_.end());
        if (t.names_.empty()) throw error("empty join term");
        return t;
    }

    static Term join_names(std::vector<std::string> names) {
        std::vector<Term> parts;
        parts.reserve(names.size());
        for (auto& n : names) parts.push_back(var(std::move(n)));
        return join(parts);
    }

    bool is_var() const { return names_.size() == 1; }
    bool is_join() const { return names_.size() > 1; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name() const {
        if (!is_var()) throw error("term is a join, not a variable");
        return names_[0];
    }

    bool mentions(const std::string& v) const {
        return std::find(names_.begin(), names_.end(), v) != names_.end();
    }

    Term renamed(const auto& map) const {  // map: name -> name (anything with .find/.end)
        std::vector<Term> parts;
        for (const auto& n : names_) {
            auto it = map.find(n);
            parts.push_back(var(it == map.end() ? n : it->second));
        }
        return join(parts);
    }

    std::string str() const {
        if (is_var()) return names_[0];
        std::string s = "join(";
        for (size_t i = 0; i < names_.size(); ++i) {
            if (i) s += ",";
            s += names_[i];
        }
        return s + ")";
    }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;

private:
    std::vector<std::string> names_;
};

}  // namespace fotpi
