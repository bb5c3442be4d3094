#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jetinv/error.hpp"

namespace jetinv {

// Ordered set of variable names. The order fixes the monomial order everywhere.
// Shared immutably; "extension" builds a new table with the old one as prefix.
class VarTable {
public:
    using Ptr = std::shared_ptr<const VarTable>;

    static Ptr make(std::vector<std::string> names) {
        auto t = std::shared_ptr<VarTable>(new VarTable());
        for (auto& n : names) t->push(std::move(n));
        return t;
    }

    static Ptr extend(const Ptr& base, const std::vector<std::string>& more) {
        auto t = std::shared_ptr<VarTable>(new VarTable());
        for (const auto& n : base->names_) t->push(n);
        for (const auto& n : more) t->push(n);
        return t;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // -1 when absent.
    int find(const std::string& n) const {
        auto it = index_.find(n);
        return it == index_.end() ? -1 : static_cast<int>(it->second);
    }

    std::size_t index_of(const std::string& n) const {
        int i = find(n);
        require(i >= 0, "unknown-variable", "unknown variable '" + n + "'");
        return static_cast<std::size_t>(i);
    }

    bool same_as(const VarTable& o) const {
        return this == &o || names_ == o.names_;
    }

    // True when o's names are an initial segment of ours.
    bool has_prefix(const VarTable& o) const {
        if (o.size() > size()) return false;
        return std::equal(o.names_.begin(), o.names_.end(), names_.begin());
    }

    static bool valid_name(const std::string& n) {
        if (n.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(n[0]))) return false;
        // bracket-indexed families: the jet form u[<ints>] and relatives like b[i,j]
        if (n.size() > 2 && n[1] == '[') {
            if (n.back() != ']') return false;
            bool digit_seen = false;
            for (std::size_t i = 2; i + 1 < n.size(); ++i) {
                char c = n[i];
                if (std::isdigit(static_cast<unsigned char>(c))) { digit_seen = true; continue; }
                if (c == ',') { if (!digit_seen) return false; digit_seen = false; continue; }
                return false;
            }
            return digit_seen;
        }
        for (char c : n)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        return true;
    }

private:
    VarTable() = default;

    void push(std::string n) {
        require(valid_name(n), "bad-variable-name", "invalid variable name '" + n + "'");
        require(index_.find(n) == index_.end(), "duplicate-variable",
                "duplicate variable '" + n + "'");
        index_[n] = names_.size();
        names_.push_back(std::move(n));
    }

    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

} // namespace jetinv
