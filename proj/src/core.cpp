#include "arrowlab/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace arrowlab {

namespace {

constexpr int kMaxAlternatives = 8;  // hard cap from the 64-bit matrix

int guard_max_m(bool override_guard) { return override_guard ? kMaxAlternatives : 4; }

void check_m(int m, bool override_guard) {
    if (m < 1 || m > guard_max_m(override_guard)) {
        throw ParameterError("alternative count " + std::to_string(m) +
                             " outside guarded range [1, " +
                             std::to_string(guard_max_m(override_guard)) + "]");
    }
}

// Recursive enumeration of ordered set partitions: each weak order on m
// elements is a ranking of nonempty blocks, R(x,y) iff rank(x) <= rank(y).
void build_orders(int m, std::vector<int>& rank, int next_elem, int used_ranks,
                  std::vector<WeakOrder>& out) {
    if (next_elem == m) {
        std::uint64_t bits = 0;
        for (Alt x = 0; x < m; ++x)
            for (Alt y = 0; y < m; ++y)
                if (rank[x] <= rank[y]) bits |= std::uint64_t{1} << (x * m + y);
        out.emplace_back(m, bits);
        return;
    }
    // Element can join any existing rank or open a new one; to cover all
    // ordered partitions, a new rank may also be inserted between existing
    // ones. Equivalent formulation: assign ranks 0..used, then renormalize.
    for (int r = 0; r <= used_ranks; ++r) {
        // Insert before rank r: shift existing ranks >= r up by one.
        for (int i = 0; i < next_elem; ++i)
            if (rank[i] >= r) ++rank[i];
        rank[next_elem] = r;
        build_orders(m, rank, next_elem + 1, used_ranks + 1, out);
        for (int i = 0; i < next_elem; ++i)
            if (rank[i] > r) --rank[i];
        if (r < used_ranks) {
            // Join existing rank r.
            rank[next_elem] = r;
            build_orders(m, rank, next_elem + 1, used_ranks, out);
        }
    }
}

bool is_strict(const WeakOrder& o) {
    for (Alt x = 0; x < o.size(); ++x)
        for (Alt y = x + 1; y < o.size(); ++y)
            if (o.rel(x, y) && o.rel(y, x)) return false;
    return true;
}

}  // namespace

void Config::validate() const {
    if (voters < 2) throw ParameterError("voter count must be at least 2");
    if (alternatives < 1) throw ParameterError("alternative count must be at least 1");
    check_m(alternatives, override_guard);
    if (!override_guard && voters > 3) {
        throw ParameterError("voter count " + std::to_string(voters) +
                             " above default guard of 3");
    }
    if (voters > 12) throw ParameterError("voter count above hard cap of 12");
}

std::string WeakOrder::offdiag_bits() const {
    std::string s;
    for (Alt x = 0; x < size_; ++x)
        for (Alt y = 0; y < size_; ++y)
            if (x != y) s.push_back(rel(x, y) ? '1' : '0');
    return s;
}

std::string WeakOrder::row_bits(Alt x) const {
    std::string s;
    for (Alt y = 0; y < size_; ++y) s.push_back(rel(x, y) ? '1' : '0');
    return s;
}

WeakOrder WeakOrder::from_rows(const std::vector<std::string>& rows) {
    int m = static_cast<int>(rows.size());
    if (m < 1 || m > kMaxAlternatives) throw ParameterError("bad matrix size");
    std::uint64_t bits = 0;
    for (Alt x = 0; x < m; ++x) {
        if (static_cast<int>(rows[x].size()) != m) throw ParameterError("ragged matrix");
        for (Alt y = 0; y < m; ++y) {
            char c = rows[x][static_cast<size_t>(y)];
            if (c != '0' && c != '1') throw ParameterError("matrix cells must be 0/1");
            if (c == '1') bits |= std::uint64_t{1} << (x * m + y);
        }
    }
    return WeakOrder(m, bits);
}

bool is_weak_order(const WeakOrder& rel) {
    int m = rel.size();
    for (Alt x = 0; x < m; ++x)
        if (!rel.rel(x, x)) return false;
    for (Alt x = 0; x < m; ++x)
        for (Alt y = 0; y < m; ++y)
            if (x != y && !rel.rel(x, y) && !rel.rel(y, x)) return false;
    for (Alt x = 0; x < m; ++x)
        for (Alt y = 0; y < m; ++y)
            for (Alt z = 0; z < m; ++z)
                if (rel.rel(x, y) && rel.rel(y, z) && !rel.rel(x, z)) return false;
    return true;
}

OrderEnumeration::OrderEnumeration(int m) : m_(m) {
    check_m(m, /*override_guard=*/true);
    std::vector<int> rank(static_cast<size_t>(m), 0);
    build_orders(m, rank, 0, 0, orders_);
    std::sort(orders_.begin(), orders_.end(), [](const WeakOrder& a, const WeakOrder& b) {
        bool sa = is_strict(a), sb = is_strict(b);
        if (sa != sb) return sa;
        return a.offdiag_bits() > b.offdiag_bits();
    });
}

std::optional<OrderId> OrderEnumeration::find(const WeakOrder& o) const {
    for (size_t i = 0; i < orders_.size(); ++i)
        if (orders_[i] == o) return static_cast<OrderId>(i);
    return std::nullopt;
}

std::uint64_t OrderEnumeration::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xFFu;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(m_));
    for (const auto& o : orders_) mix(o.bits());
    return h;
}

std::int64_t fubini(int m) {
    check_m(m, /*override_guard=*/true);
    return OrderEnumeration(m).count();
}

std::vector<WeakOrder> enumerate_weak_orders(int m, bool override_guard) {
    check_m(m, override_guard);
    return OrderEnumeration(m).all();
}

ProfileId profile_id(const Profile& p, std::int64_t order_count) {
    ProfileId pid = 0;
    for (OrderId o : p.orders) {
        if (o < 0 || o >= order_count) throw ParameterError("order id out of range");
        pid = pid * order_count + o;
    }
    return pid;
}

Profile profile_from_id(ProfileId pid, int voters, std::int64_t order_count) {
    Profile p;
    p.orders.assign(static_cast<size_t>(voters), 0);
    for (int v = voters - 1; v >= 0; --v) {
        p.orders[static_cast<size_t>(v)] = static_cast<OrderId>(pid % order_count);
        pid /= order_count;
    }
    if (pid != 0) throw ParameterError("profile id out of range");
    return p;
}

std::int64_t profile_count(const Config& cfg) {
    cfg.validate();
    std::int64_t k = fubini(cfg.alternatives);
    std::int64_t total = 1;
    for (int v = 0; v < cfg.voters; ++v) {
        if (total > (std::int64_t{1} << 40) / k) {
            throw ParameterError("profile count overflows the guard");
        }
        total *= k;
    }
    return total;
}

ProfileSpace::ProfileSpace(Config cfg, const OrderEnumeration& orders)
    : cfg_(cfg), orders_(orders) {
    cfg_.validate();
    if (orders.m() != cfg.alternatives) throw ParameterError("enumeration/config mismatch");
    count_ = profile_count(cfg_);
}

OrderId ProfileSpace::voter_order_id(ProfileId pid, int voter) const {
    std::int64_t k = orders_.count();
    int shift = cfg_.voters - 1 - voter;
    for (int i = 0; i < shift; ++i) pid /= k;
    return static_cast<OrderId>(pid % k);
}

const WeakOrder& ProfileSpace::voter_order(ProfileId pid, int voter) const {
    return orders_.order(voter_order_id(pid, voter));
}

bool ProfileSpace::strict_prefers(ProfileId pid, int voter, Alt x, Alt y) const {
    return voter_order(pid, voter).strict_prefers(x, y);
}

bool ProfileSpace::unanimous_strict(ProfileId pid, Alt x, Alt y) const {
    for (int v = 0; v < cfg_.voters; ++v)
        if (!strict_prefers(pid, v, x, y)) return false;
    return true;
}

bool ProfileSpace::agree_on_pair(ProfileId a, ProfileId b, Alt x, Alt y) const {
    for (int v = 0; v < cfg_.voters; ++v) {
        const WeakOrder& oa = voter_order(a, v);
        const WeakOrder& ob = voter_order(b, v);
        if (oa.rel(x, y) != ob.rel(x, y) || oa.rel(y, x) != ob.rel(y, x)) return false;
    }
    return true;
}

}  // namespace arrowlab
