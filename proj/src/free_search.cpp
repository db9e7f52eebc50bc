#include "free_search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <limits>

namespace ebc::detail {

namespace {

using Clock = std::chrono::steady_clock;

// Memory allowed for the symmetry lookup tables of one search.
constexpr std::size_t kSymmetryTableBytes = std::size_t{32} << 20;

template <std::size_t W>
using Bits = std::array<std::uint64_t, W>;

template <std::size_t W>
bool intersects(const Bits<W>& a, const Bits<W>& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < W; ++i) acc |= a[i] & b[i];
    return acc != 0;
}

template <std::size_t W>
unsigned popcount(const Bits<W>& a) {
    unsigned total = 0;
    for (auto w : a) total += static_cast<unsigned>(std::popcount(w));
    return total;
}

template <std::size_t W>
void set_bit(Bits<W>& a, std::uint32_t i) {
    a[i / 64] |= std::uint64_t{1} << (i % 64);
}

// Open-addressing map from a bit-vector key to the smallest "need" (number of
// further terms) proved impossible from that state. The all-zero key marks an
// empty slot, so the empty state is never stored.
template <std::size_t K>
class FailureMemo {
public:
    static constexpr std::uint16_t kNone = std::numeric_limits<std::uint16_t>::max();

    FailureMemo() { resize(std::size_t{1} << 12); }

    std::size_t size() const { return size_; }

    std::uint16_t find(const Bits<K>& key) const {
        for (std::size_t slot = hash(key) & mask_;; slot = (slot + 1) & mask_) {
            if (is_empty(slot)) return kNone;
            if (keys_[slot] == key) return values_[slot];
        }
    }

    void record(const Bits<K>& key, std::uint16_t need) {
        if ((size_ + 1) * 4 > keys_.size() * 3) resize(keys_.size() * 2);
        std::size_t slot = hash(key) & mask_;
        for (; !is_empty(slot); slot = (slot + 1) & mask_) {
            if (keys_[slot] == key) {
                values_[slot] = std::min(values_[slot], need);
                return;
            }
        }
        keys_[slot] = key;
        values_[slot] = need;
        ++size_;
    }

private:
    static std::size_t hash(const Bits<K>& key) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : key) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 31;
        }
        return static_cast<std::size_t>(h);
    }

    bool is_empty(std::size_t slot) const {
        for (auto w : keys_[slot])
            if (w) return false;
        return true;
    }

    void resize(std::size_t slots) {
        std::vector<Bits<K>> old_keys = std::move(keys_);
        std::vector<std::uint16_t> old_values = std::move(values_);
        keys_.assign(slots, Bits<K>{});
        values_.assign(slots, kNone);
        mask_ = slots - 1;
        size_ = 0;
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            bool empty = true;
            for (auto w : old_keys[i]) empty = empty && w == 0;
            if (!empty) record(old_keys[i], old_values[i]);
        }
    }

    std::vector<Bits<K>> keys_;
    std::vector<std::uint16_t> values_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

// Lossy direct-mapped cache in front of the canonicalizing memo: the same raw
// product set is reached again through every reordering of a prefix.
template <std::size_t W>
class RawCache {
public:
    RawCache() : entries_(std::max<std::size_t>(1024, std::bit_floor(kRawCacheBytes / sizeof(Entry)))) {}

    std::uint16_t find(const Bits<W>& key) const {
        const Entry& e = entries_[slot(key)];
        return e.key == key ? e.need : std::numeric_limits<std::uint16_t>::max();
    }

    void record(const Bits<W>& key, std::uint16_t need) {
        Entry& e = entries_[slot(key)];
        if (e.key == key) {
            e.need = std::min(e.need, need);
        } else {
            e.key = key;
            e.need = need;
        }
    }

private:
    static constexpr std::size_t kRawCacheBytes = std::size_t{16} << 20;
    struct Entry {
        Bits<W> key{};
        std::uint16_t need = std::numeric_limits<std::uint16_t>::max();
    };

    std::size_t slot(const Bits<W>& key) const {
        std::uint64_t h = 0;
        for (auto w : key) h = (h ^ w) * 0x9e3779b97f4a7c15ULL;
        return static_cast<std::size_t>(h >> 20) & (entries_.size() - 1);
    }

    std::vector<Entry> entries_;
};

template <std::size_t W>
class Engine {
public:
    Engine(const FreeSearchProblem& problem, const SearchBudget& budget)
        : problem_(problem), budget_(budget), n_(static_cast<std::uint32_t>(problem.n)), start_(Clock::now()) {
        mul_.resize(std::size_t{n_} * n_);
        for (std::uint32_t a = 0; a < n_; ++a)
            for (std::uint32_t b = 0; b < n_; ++b) mul_[std::size_t{a} * n_ + b] = static_cast<std::uint16_t>(a * b % n_);
        std::vector<char> forbidden(n_, 0);
        for (Residue f : problem.forbidden) forbidden[f] = 1;
        for (Residue a : problem.candidates) {
            Bits<W> pre{};
            for (std::uint32_t s = 0; s < n_; ++s)
                if (forbidden[mul_[a * n_ + s]]) set_bit(pre, s);
            candidates_.push_back({static_cast<std::uint32_t>(a), pre});
        }
        build_symmetry_tables();
    }

    FreeSearchResult run(std::span<const Residue> seed) {
        FreeSearchResult result;
        std::size_t length = seed.size();
        std::vector<Residue> best(seed.begin(), seed.end());
        const std::size_t capacity = problem_.capacity;
        bool decided = true;
        while (length < capacity) {
            path_.clear();
            if (exists(Bits<W>{}, static_cast<unsigned>(length + 1))) {
                ++length;
                best = path_;
                continue;
            }
            if (aborted_) decided = false;
            break;
        }
        result.decided = decided;
        result.best_length = length;
        result.upper_length = decided ? length : capacity;

        std::sort(best.begin(), best.end());
        result.witness = best;
        if (decided && !aborted_) {
            path_.clear();
            if (find_canonical(Bits<W>{}, 0, static_cast<unsigned>(length))) {
                result.witness = path_;
                result.witness_lex_smallest = true;
            }
        }
        result.stats.nodes = nodes_;
        result.stats.states = memo_.size() + canonical_memo_.size();
        result.stats.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        return result;
    }

private:
    struct Candidate {
        std::uint32_t term;
        Bits<W> preimage_of_forbidden;  // s with term * s forbidden
    };

    Bits<W> advance(const Bits<W>& s, std::uint32_t a) const {
        Bits<W> t = s;
        const std::uint16_t* row = &mul_[std::size_t{a} * n_];
        for (std::size_t w = 0; w < W; ++w) {
            for (std::uint64_t word = s[w]; word; word &= word - 1)
                set_bit(t, row[w * 64 + static_cast<unsigned>(std::countr_zero(word))]);
        }
        set_bit(t, a);
        return t;
    }

    // Smallest image of s (comparing from the high word down) over the
    // symmetry maps, each applied through per-byte lookup tables.
    Bits<W> canonical(const Bits<W>& s) const {
        if (map_count_ == 0) return s;
        std::array<std::uint32_t, 8 * W> offsets;  // byte * 256 + value, for nonzero bytes
        std::size_t live = 0;
        for (std::size_t b = 0; b < byte_count_; ++b) {
            const auto v = static_cast<std::uint8_t>(s[b / 8] >> (8 * (b % 8)));
            if (v) offsets[live++] = static_cast<std::uint32_t>(b * 256 + v);
        }
        Bits<W> best = s;
        const Bits<W>* table = byte_images_.data();
        for (std::size_t m = 0; m < map_count_; ++m, table += byte_count_ * 256) {
            Bits<W> image{};
            for (std::size_t i = 0; i < live; ++i) {
                const Bits<W>& part = table[offsets[i]];
                for (std::size_t w = 0; w < W; ++w) image[w] |= part[w];
            }
            if (std::lexicographical_compare(image.rbegin(), image.rend(), best.rbegin(), best.rend())) best = image;
        }
        return best;
    }

    void build_symmetry_tables() {
        byte_count_ = (n_ + 7) / 8;
        const std::size_t per_map = byte_count_ * 256 * sizeof(Bits<W>);
        map_count_ = std::min(problem_.symmetries.size(), kSymmetryTableBytes / per_map);
        byte_images_.assign(map_count_ * byte_count_ * 256, Bits<W>{});
        for (std::size_t m = 0; m < map_count_; ++m) {
            const auto& perm = problem_.symmetries[m];
            Bits<W>* table = &byte_images_[m * byte_count_ * 256];
            for (std::size_t b = 0; b < byte_count_; ++b) {
                for (unsigned v = 1; v < 256; ++v) {
                    Bits<W> image{};
                    for (unsigned bit = 0; bit < 8; ++bit) {
                        const std::size_t x = b * 8 + bit;
                        if ((v >> bit) & 1 && x < n_) set_bit(image, perm[x]);
                    }
                    table[b * 256 + v] = image;
                }
            }
        }
    }

    bool budget_exhausted() {
        if (aborted_) return true;
        if (!problem_.uncapped && memo_.size() + canonical_memo_.size() > budget_.max_states) aborted_ = true;
        if ((++nodes_ & 0x3ff) == 0 && budget_.max_seconds > 0 &&
            std::chrono::duration<double>(Clock::now() - start_).count() > budget_.max_seconds)
            aborted_ = true;
        return aborted_;
    }

    // Is there a free extension of s by at least need terms (any order)?
    bool exists(const Bits<W>& s, unsigned need) {
        if (need == 0) return true;
        const unsigned size = popcount(s);
        if (problem_.capacity - size < need) return false;
        if (budget_exhausted()) return false;
        const bool root = size == 0;
        if (!root && raw_cache_.find(s) <= need) return false;
        const Bits<W> key = root ? s : canonical(s);
        if (!root && memo_.find(key) <= need) {
            raw_cache_.record(s, static_cast<std::uint16_t>(need));
            return false;
        }
        for (const auto& c : candidates_) {
            if (intersects(s, c.preimage_of_forbidden)) continue;
            const Bits<W> t = advance(s, c.term);
            if (problem_.capacity - popcount(t) < need - 1) continue;
            path_.push_back(c.term);
            if (exists(t, need - 1)) return true;
            path_.pop_back();
            if (aborted_) return false;
        }
        if (!root) {
            memo_.record(key, static_cast<std::uint16_t>(need));
            raw_cache_.record(s, static_cast<std::uint16_t>(need));
        }
        return false;
    }

    // Same question restricted to terms at index >= from, explored in
    // nondecreasing order so the first hit is the lexicographically smallest.
    bool find_canonical(const Bits<W>& s, std::size_t from, unsigned need) {
        if (need == 0) return true;
        const unsigned size = popcount(s);
        if (problem_.capacity - size < need) return false;
        if (budget_exhausted()) return false;
        const bool root = size == 0;
        Bits<W + 1> key{};
        if (!root) {
            if (memo_.find(canonical(s)) <= need) return false;
            std::copy(s.begin(), s.end(), key.begin());
            key[W] = from;
            if (canonical_memo_.find(key) <= need) return false;
        }
        for (std::size_t i = from; i < candidates_.size(); ++i) {
            const auto& c = candidates_[i];
            if (intersects(s, c.preimage_of_forbidden)) continue;
            const Bits<W> t = advance(s, c.term);
            if (problem_.capacity - popcount(t) < need - 1) continue;
            path_.push_back(c.term);
            if (find_canonical(t, i, need - 1)) return true;
            path_.pop_back();
            if (aborted_) return false;
        }
        if (!root) canonical_memo_.record(key, static_cast<std::uint16_t>(need));
        return false;
    }

    const FreeSearchProblem& problem_;
    const SearchBudget& budget_;
    std::uint32_t n_;
    Clock::time_point start_;
    std::vector<std::uint16_t> mul_;
    std::vector<Candidate> candidates_;
    std::vector<Bits<W>> byte_images_;  // [map][byte][value] -> image bits
    std::size_t byte_count_ = 0;
    std::size_t map_count_ = 0;
    FailureMemo<W> memo_;
    RawCache<W> raw_cache_;
    FailureMemo<W + 1> canonical_memo_;
    std::vector<Residue> path_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

template <std::size_t W>
FreeSearchResult run_engine(const FreeSearchProblem& problem, std::span<const Residue> seed, const SearchBudget& budget) {
    Engine<W> engine(problem, budget);
    return engine.run(seed);
}

}  // namespace

FreeSearchResult maximize_free_sequence(const FreeSearchProblem& problem, std::span<const Residue> seed,
                                        const SearchBudget& budget) {
    const std::uint64_t n = problem.n;
    if (n <= 64) return run_engine<1>(problem, seed, budget);
    if (n <= 128) return run_engine<2>(problem, seed, budget);
    if (n <= 256) return run_engine<4>(problem, seed, budget);
    if (n <= 512) return run_engine<8>(problem, seed, budget);
    if (n <= kMaxSearchModulus) return run_engine<16>(problem, seed, budget);

    // Beyond the engine's width only the trivial certificate is available.
    FreeSearchResult result;
    result.best_length = seed.size();
    result.decided = seed.size() >= problem.capacity;
    result.upper_length = problem.capacity;
    result.witness.assign(seed.begin(), seed.end());
    std::sort(result.witness.begin(), result.witness.end());
    return result;
}

}  // namespace ebc::detail
