#include "monotone_cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace apds::detail {

void patience_cover(std::span<const uint64_t> v, std::span<const uint64_t> pos, bool up, std::vector<uint64_t>& label,
                    std::vector<Dir>& dir) {
    std::multimap<uint64_t, uint64_t> tops;  // top value -> run id (0-based)
    for (uint64_t i : pos) {
        auto it = tops.end();
        if (up) {
            auto hi = tops.upper_bound(v[i]);
            if (hi != tops.begin()) it = std::prev(hi);
        } else {
            it = tops.lower_bound(v[i]);
        }
        uint64_t id;
        if (it == tops.end()) {
            id = dir.size();
            dir.push_back(up ? kUp : kDown);
        } else {
            id = it->second;
            tops.erase(it);
        }
        tops.emplace(v[i], id);
        label[i] = id + 1;
    }
}

void renumber(std::vector<uint64_t>& label, std::vector<Dir>& dir) {
    std::vector<uint64_t> id(dir.size() + 1, 0);
    std::vector<Dir> out;
    for (auto& x : label) {
        if (id[x] == 0) {
            out.push_back(dir[x - 1]);
            id[x] = out.size();
        }
        x = id[x];
    }
    dir = std::move(out);
}

std::vector<uint64_t> longest_monotone(std::span<const uint64_t> v, std::span<const uint64_t> pos, bool up) {
    auto key = [&](uint64_t k) { return up ? v[pos[k]] : UINT64_MAX - v[pos[k]]; };
    std::vector<uint64_t> tail;  // tail[len-1]: index into pos of the smallest end of a chain of length len
    std::vector<int64_t> back(pos.size(), -1);
    for (uint64_t k = 0; k < pos.size(); ++k) {
        const uint64_t x = key(k);
        auto it = std::partition_point(tail.begin(), tail.end(), [&](uint64_t t) { return key(t) <= x; });
        if (it != tail.begin()) back[k] = static_cast<int64_t>(*std::prev(it));
        if (it == tail.end())
            tail.push_back(k);
        else
            *it = k;
    }
    std::vector<uint64_t> out;
    for (int64_t k = tail.empty() ? -1 : static_cast<int64_t>(tail.back()); k >= 0; k = back[k]) out.push_back(pos[k]);
    std::reverse(out.begin(), out.end());
    return out;
}

void peel_cover(std::span<const uint64_t> v, std::vector<uint64_t>& label, std::vector<Dir>& dir) {
    std::vector<uint64_t> rest(v.size());
    for (uint64_t i = 0; i < rest.size(); ++i) rest[i] = i;
    label.assign(v.size(), 0);
    dir.clear();
    while (!rest.empty()) {
        const auto inc = longest_monotone(v, rest, true);
        const auto dec = longest_monotone(v, rest, false);
        const bool up = inc.size() >= dec.size();
        const auto& best = up ? inc : dec;
        if (static_cast<double>(best.size()) < 3.0 * std::sqrt(static_cast<double>(rest.size()))) break;
        dir.push_back(best.size() == 1 || up ? kUp : kDown);
        for (uint64_t i : best) label[i] = dir.size();
        std::vector<uint64_t> next;
        next.reserve(rest.size() - best.size());
        for (uint64_t i : rest)
            if (label[i] == 0) next.push_back(i);
        rest.swap(next);
    }
    if (!rest.empty()) {
        std::vector<uint64_t> la(label), lb(label);
        std::vector<Dir> da(dir), db(dir);
        patience_cover(v, rest, true, la, da);
        patience_cover(v, rest, false, lb, db);
        if (db.size() < da.size()) {
            la.swap(lb);
            da.swap(db);
        }
        label.swap(la);
        dir.swap(da);
    }
    renumber(label, dir);
}

}  // namespace apds::detail
