#include "descent/multi.hpp"

namespace descent {

std::string index_string(const Index& idx) {
    std::string s = "(";
    for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
    return s + ")";
}

std::string IdentityViolation::to_string() const {
    return family + " at " + index_string(idx) + " dir " + std::to_string(dir) + " i=" + std::to_string(i) +
           " j=" + std::to_string(j);
}

Shape::Shape(std::vector<int> top_, std::vector<int> low_, bool corner_)
    : top(std::move(top_)), low(std::move(low_)), corner(corner_) {
    if (top.size() != low.size()) throw std::invalid_argument("shape: arity mismatch");
    for (std::size_t a = 0; a < top.size(); ++a)
        if (low[a] != 0 && low[a] != -1) throw std::invalid_argument("shape: lower bound must be 0 or -1");
}

Shape Shape::multi_augmented(int arity, int N, bool corner) {
    return Shape(std::vector<int>(arity, N), std::vector<int>(arity, -1), corner);
}

bool Shape::contains(const Index& idx) const {
    if (idx.size() != top.size()) return false;
    bool all_neg = true;
    for (std::size_t a = 0; a < top.size(); ++a) {
        if (idx[a] < low[a] || idx[a] > top[a]) return false;
        if (idx[a] != -1) all_neg = false;
    }
    return corner || !all_neg;
}

std::vector<Index> Shape::indices() const {
    std::vector<Index> out;
    Index cur = low;
    if (top.empty()) return out;
    while (true) {
        if (contains(cur)) out.push_back(cur);
        int a = arity() - 1;
        while (a >= 0 && cur[a] == top[a]) {
            cur[a] = low[a];
            --a;
        }
        if (a < 0) break;
        ++cur[a];
    }
    return out;
}

}  // namespace descent
