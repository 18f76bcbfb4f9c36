#include "graycat/catalog.hpp"

#include <deque>

namespace graycat {

CellCatalog::CellCatalog(const Polygraph& p, std::size_t budget, int max_dim) {
    max_dim_ = max_dim < 0 ? std::max(p.max_dim(), 0) : max_dim;
    std::deque<int> queue;
    auto insert = [&](const CellTable& x, const Derivation& d) {
        std::string key = x.str();
        if (index_.count(key)) return;
        if (cells_.size() >= budget) throw BudgetExceeded("cell catalog exceeded budget of " + std::to_string(budget));
        index_[key] = static_cast<int>(cells_.size());
        cells_.push_back(x);
        deriv_.push_back(d);
        queue.push_back(static_cast<int>(cells_.size()) - 1);
    };
    for (const auto& g : p.generators())
        if (g.dim <= max_dim_) insert(p.atom(g.id), {Derivation::Atom, g.id});

    // by_source[n][k][key of source(y,k)] -> y, and the same for targets
    std::vector<std::vector<std::unordered_map<std::string, std::vector<int>>>> by_src(max_dim_ + 1), by_tgt(max_dim_ + 1);
    for (int n = 0; n <= max_dim_; ++n) {
        by_src[n].resize(n);
        by_tgt[n].resize(n);
    }
    while (!queue.empty()) {
        int z = queue.front();
        queue.pop_front();
        const CellTable x = cells_[z];
        int n = x.n;
        if (n < max_dim_) insert(identity(x), {Derivation::Identity, "", z});
        for (int k = 0; k < n; ++k) {
            by_src[n][k][cell_source(x, k).str()].push_back(z);
            by_tgt[n][k][cell_target(x, k).str()].push_back(z);
        }
        for (int k = 0; k < n; ++k) {
            auto right = by_src[n][k][cell_target(x, k).str()];
            for (int y : right) insert(compose(x, cells_[y], k), {Derivation::Compose, "", z, y, k});
            auto left = by_tgt[n][k][cell_source(x, k).str()];
            for (int w : left) insert(compose(cells_[w], x, k), {Derivation::Compose, "", w, z, k});
        }
    }
}

int CellCatalog::index_of(const CellTable& x) const {
    auto it = index_.find(x.str());
    return it == index_.end() ? -1 : it->second;
}

std::string CellCatalog::expression(int i) const {
    const Derivation& d = deriv_[i];
    switch (d.kind) {
        case Derivation::Atom:
            return d.gen;
        case Derivation::Identity:
            return "1(" + expression(d.a) + ")";
        case Derivation::Compose:
            return "(" + expression(d.a) + " #" + std::to_string(d.level) + " " + expression(d.b) + ")";
    }
    return "";
}

std::vector<int> CellCatalog::of_dim(int d) const {
    std::vector<int> r;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].n == d) r.push_back(static_cast<int>(i));
    return r;
}

}  // namespace graycat
