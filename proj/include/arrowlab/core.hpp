#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrowlab {

// Alternatives are 0-based and printed as letters a..d.
using Alt = int;
using OrderId = int;
using ProfileId = std::int64_t;

inline char alt_letter(Alt x) { return static_cast<char>('a' + x); }

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int voters = 2;
    int alternatives = 3;
    bool override_guard = false;

    // Throws ParameterError when outside the supported range. The default
    // guard (n <= 3, m <= 4) bounds fubini(m)^n; override_guard lifts it.
    void validate() const;
};

// A complete, transitive, reflexive relation over at most 8 alternatives,
// stored as a bit matrix with bit index x*size + y for R(x,y).
class WeakOrder {
  public:
    WeakOrder(int size, std::uint64_t bits) : size_(size), bits_(bits) {}

    int size() const { return size_; }
    bool rel(Alt x, Alt y) const { return (bits_ >> (x * size_ + y)) & 1u; }
    std::uint64_t bits() const { return bits_; }

    bool strict_prefers(Alt x, Alt y) const { return rel(x, y) && !rel(y, x); }
    bool ties(Alt x, Alt y) const { return rel(x, y) && rel(y, x); }

    // Off-diagonal bits in row-major (x,y) order, x != y, as a 0/1 string.
    std::string offdiag_bits() const;
    // Full matrix row as a 0/1 string (including the diagonal).
    std::string row_bits(Alt x) const;

    bool operator==(const WeakOrder& o) const = default;

    static WeakOrder from_rows(const std::vector<std::string>& rows);

  private:
    int size_;
    std::uint64_t bits_;
};

// True iff the bit matrix is reflexive, complete and transitive.
bool is_weak_order(const WeakOrder& rel);

// Number of weak orders on m elements: 1, 3, 13, 75, ...
std::int64_t fubini(int m);

// The canonical enumeration of all weak orders on m alternatives.
//
// Order: strict (tie-free) orders first, then orders containing ties; within
// each group sorted by the off-diagonal bit string in descending
// lexicographic order. For m = 3 this puts a>b>c at id 0 and a>c>b at id 1.
class OrderEnumeration {
  public:
    explicit OrderEnumeration(int m);

    int m() const { return m_; }
    std::int64_t count() const { return static_cast<std::int64_t>(orders_.size()); }
    const WeakOrder& order(OrderId id) const { return orders_.at(static_cast<size_t>(id)); }
    const std::vector<WeakOrder>& all() const { return orders_; }

    // Id of a given relation, if it is a weak order in this enumeration.
    std::optional<OrderId> find(const WeakOrder& o) const;

    // FNV-1a hash over m and the canonical matrix sequence; traces carry it
    // so profile ids stay tied to this enumeration.
    std::uint64_t fingerprint() const;

  private:
    int m_;
    std::vector<WeakOrder> orders_;
};

// enumerate_weak_orders with the default guard m <= 4 (override lifts it).
std::vector<WeakOrder> enumerate_weak_orders(int m, bool override_guard = false);

struct Profile {
    std::vector<OrderId> orders;  // one per voter
};

// Voter-major: voter 0 is the most significant digit in base fubini(m).
ProfileId profile_id(const Profile& p, std::int64_t order_count);
Profile profile_from_id(ProfileId pid, int voters, std::int64_t order_count);

// fubini(m)^n, guarded against overflow.
std::int64_t profile_count(const Config& cfg);

// Profile-level pairwise queries. `orders` must be the enumeration for cfg.
class ProfileSpace {
  public:
    ProfileSpace(Config cfg, const OrderEnumeration& orders);

    const Config& config() const { return cfg_; }
    const OrderEnumeration& orders() const { return orders_; }
    std::int64_t count() const { return count_; }

    const WeakOrder& voter_order(ProfileId pid, int voter) const;
    OrderId voter_order_id(ProfileId pid, int voter) const;

    bool strict_prefers(ProfileId pid, int voter, Alt x, Alt y) const;
    bool unanimous_strict(ProfileId pid, Alt x, Alt y) const;
    // True iff every voter has identical (x,y) and (y,x) states in both.
    bool agree_on_pair(ProfileId a, ProfileId b, Alt x, Alt y) const;

  private:
    Config cfg_;
    const OrderEnumeration& orders_;
    std::int64_t count_;
};

}  // namespace arrowlab
