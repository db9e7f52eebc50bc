#include "ebc/sequences.hpp"

#include "ebc/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

namespace ebc {

namespace {

// Products are tracked in dense tables of width n below this bound.
constexpr std::uint64_t kMaxDenseModulus = std::uint64_t{1} << 26;

void require_dense(std::uint64_t n, const char* where) {
    if (n > kMaxDenseModulus)
        throw DomainError(std::string(where) + ": modulus " + std::to_string(n) + " too large for dense product sets");
}

}  // namespace

ResidueSequence::ResidueSequence(std::uint64_t n) : n_(n) {
    if (n_ < 1) throw DomainError("sequence modulus must be positive");
}

ResidueSequence::ResidueSequence(std::uint64_t n, std::span<const Residue> terms) : ResidueSequence(n) {
    for (Residue a : terms) push(a);
}

ResidueSequence::ResidueSequence(std::uint64_t n, std::initializer_list<Residue> terms)
    : ResidueSequence(n, std::span<const Residue>(terms.begin(), terms.size())) {}

std::uint64_t ResidueSequence::multiplicity(Residue a) const {
    auto it = counts_.find(a % n_);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<Residue> ResidueSequence::terms() const {
    std::vector<Residue> out;
    out.reserve(size_);
    for (const auto& [a, c] : counts_) out.insert(out.end(), c, a);
    return out;
}

void ResidueSequence::push(Residue a, std::uint64_t times) {
    if (times == 0) return;
    counts_[a % n_] += times;
    size_ += times;
}

void ResidueSequence::remove(const ResidueSequence& other) {
    if (!other.divides(*this)) throw PreconditionError("remove: argument is not a subsequence");
    for (const auto& [a, c] : other.counts_) {
        auto it = counts_.find(a);
        it->second -= c;
        if (it->second == 0) counts_.erase(it);
        size_ -= c;
    }
}

bool ResidueSequence::divides(const ResidueSequence& other) const {
    if (n_ != other.n_) return false;
    return std::all_of(counts_.begin(), counts_.end(),
                       [&](const auto& kv) { return other.multiplicity(kv.first) >= kv.second; });
}

ResidueSequence ResidueSequence::concat(const ResidueSequence& other) const {
    if (n_ != other.n_) throw DomainError("concat: modulus mismatch");
    ResidueSequence out = *this;
    for (const auto& [a, c] : other.counts_) out.push(a, c);
    return out;
}

bool operator<(const ResidueSequence& a, const ResidueSequence& b) {
    const auto ta = a.terms();
    const auto tb = b.terms();
    return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
}

ProductSet::ProductSet(std::uint64_t n) : n_(n) {
    require_dense(n, "ProductSet");
    bits_.assign((n + 63) / 64, 0);
}

std::size_t ProductSet::size() const {
    std::size_t total = 0;
    for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<Residue> ProductSet::members() const {
    std::vector<Residue> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        for (std::uint64_t word = bits_[w]; word; word &= word - 1)
            out.push_back(w * 64 + static_cast<unsigned>(std::countr_zero(word)));
    }
    return out;
}

void ProductSet::absorb(Residue a) {
    a %= n_;
    const auto previous = bits_;
    for (std::size_t w = 0; w < previous.size(); ++w) {
        for (std::uint64_t word = previous[w]; word; word &= word - 1) {
            const Residue s = w * 64 + static_cast<unsigned>(std::countr_zero(word));
            set(mul_mod(s, a, n_));
        }
    }
    set(a);
}

bool ProductSet::intersects(const IdempotentSet& e) const {
    return std::any_of(e.members().begin(), e.members().end(), [&](Residue x) { return contains(x); });
}

Residue pi(const ResidueSequence& t) {
    if (t.empty()) throw DomainError("pi: product of the empty sequence is undefined");
    Residue product = 1 % t.n();
    for (const auto& [a, c] : t.counts()) product = mul_mod(product, pow_mod(a, c, t.n()), t.n());
    return product;
}

ProductSet product_set(std::uint64_t n, std::span<const Residue> ordered_terms) {
    ProductSet s(n);
    for (Residue a : ordered_terms) s.absorb(a);
    return s;
}

ProductSet product_set(const ResidueSequence& t) {
    const auto terms = t.terms();
    return product_set(t.n(), terms);
}

bool is_idempotent_product_free(const ResidueSequence& t, const IdempotentSet& e) {
    if (t.n() != e.n())
        throw DomainError("is_idempotent_product_free: modulus mismatch (" + std::to_string(t.n()) + " vs " +
                          std::to_string(e.n()) + ")");
    return !product_set(t).intersects(e);
}

bool is_product_one_free(const ResidueSequence& t) {
    return !product_set(t).contains(1 % t.n());
}

std::optional<ResidueSequence> smallest_subsequence_with_product_in(
    const ResidueSequence& t, std::span<const Residue> targets, const std::function<Residue(Residue)>& image) {
    const std::uint64_t n = t.n();
    require_dense(n, "subsequence search");
    if (t.empty() || targets.empty()) return std::nullopt;

    std::vector<char> is_target(n, 0);
    for (Residue x : targets) is_target[x % n] = 1;

    struct Item {
        Residue term;
        std::uint64_t count;
        Residue value;
    };
    std::vector<Item> items;
    for (const auto& [a, c] : t.counts()) items.push_back({a, c, (image ? image(a) : a) % n});

    // Fewest terms reaching each product: knapsack over items, nonempty only.
    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> fewest(n, kInf);
    for (const auto& it : items) {
        auto next = fewest;
        Residue power = 1 % n;
        for (std::uint64_t c = 1; c <= it.count; ++c) {
            power = mul_mod(power, it.value, n);
            const auto cc = static_cast<std::uint32_t>(c);
            next[power] = std::min(next[power], cc);
            for (Residue x = 0; x < n; ++x) {
                if (fewest[x] == kInf) continue;
                const Residue y = mul_mod(x, power, n);
                next[y] = std::min(next[y], fewest[x] + cc);
            }
        }
        fewest = std::move(next);
    }
    std::uint32_t length = kInf;
    for (Residue x = 0; x < n; ++x)
        if (is_target[x]) length = std::min(length, fewest[x]);
    if (length == kInf) return std::nullopt;

    // reach[j][l][x]: some sub-multiset of items[j..] with exactly l terms has product x.
    const std::size_t d = items.size();
    const std::size_t width = length + 1;
    std::vector<std::vector<char>> reach((d + 1) * width, std::vector<char>());
    auto cell = [&](std::size_t j, std::size_t l) -> std::vector<char>& { return reach[j * width + l]; };
    for (std::size_t l = 0; l <= length; ++l) cell(d, l).assign(n, 0);
    cell(d, 0)[1 % n] = 1;
    for (std::size_t j = d; j-- > 0;) {
        for (std::size_t l = 0; l <= length; ++l) {
            auto& out = cell(j, l);
            out.assign(n, 0);
            Residue power = 1 % n;
            for (std::size_t c = 0; c <= std::min<std::uint64_t>(items[j].count, l); ++c) {
                const auto& tail = cell(j + 1, l - c);
                for (Residue x = 0; x < n; ++x)
                    if (tail[x]) out[mul_mod(x, power, n)] = 1;
                power = mul_mod(power, items[j].value, n);
            }
        }
    }
    auto completes = [&](std::size_t j, std::size_t l, Residue acc) {
        const auto& tail = cell(j, l);
        for (Residue x = 0; x < n; ++x)
            if (tail[x] && is_target[mul_mod(acc, x, n)]) return true;
        return false;
    };

    // Taking as many copies of each smaller term as possible yields the
    // lexicographically smallest canonical sequence.
    ResidueSequence out(n);
    Residue acc = 1 % n;
    std::size_t remaining = length;
    for (std::size_t j = 0; j < d; ++j) {
        const std::uint64_t most = std::min<std::uint64_t>(items[j].count, remaining);
        for (std::uint64_t c = most + 1; c-- > 0;) {
            const Residue with = mul_mod(acc, pow_mod(items[j].value, c, n), n);
            if (completes(j + 1, remaining - c, with)) {
                out.push(items[j].term, c);
                acc = with;
                remaining -= c;
                break;
            }
        }
    }
    if (remaining != 0 || !is_target[acc]) throw InconsistencyError("subsequence reconstruction failed");
    return out;
}

std::optional<ResidueSequence> find_product_one_subsequence(const ResidueSequence& t) {
    for (const auto& [a, c] : t.counts()) {
        if (std::gcd(a, t.n()) != 1)
            throw DomainError("find_product_one_subsequence: " + std::to_string(a) + " is not a unit mod " +
                              std::to_string(t.n()));
    }
    const Residue one[] = {1 % t.n()};
    return smallest_subsequence_with_product_in(t, one);
}

std::vector<std::size_t> running_product_set_sizes(std::uint64_t n, std::span<const Residue> ordered_terms) {
    ProductSet s(n);
    std::vector<std::size_t> sizes;
    sizes.reserve(ordered_terms.size());
    for (Residue a : ordered_terms) {
        s.absorb(a);
        sizes.push_back(s.size());
    }
    return sizes;
}

bool strict_growth_holds(std::uint64_t n, std::span<const Residue> ordered_terms) {
    std::size_t previous = 0;
    for (std::size_t size : running_product_set_sizes(n, ordered_terms)) {
        if (size <= previous) return false;
        previous = size;
    }
    return true;
}

ResidueSequence parse_sequence(std::string_view literal, std::uint64_t n, bool reduce) {
    ResidueSequence out(n);
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    literal = trim(literal);
    if (literal.empty()) return out;
    std::size_t start = 0;
    while (start <= literal.size()) {
        const std::size_t comma = literal.find(',', start);
        const std::string_view token = trim(literal.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (token.empty()) throw ParseError("empty term in sequence literal");
        const bool negative = token.front() == '-';
        const std::string_view digits = negative ? token.substr(1) : token;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
            throw ParseError("malformed term '" + std::string(token) + "'");
        if (negative && !reduce) throw ParseError("negative term '" + std::string(token) + "' (use --reduce)");
        if (!reduce && value >= n)
            throw ParseError("term " + std::to_string(value) + " is not a residue mod " + std::to_string(n) + " (use --reduce)");
        const Residue r = value % n;
        out.push(negative ? (n - r) % n : r);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_terms(std::span<const Residue> terms) {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ',';
        out << terms[i];
    }
    return out.str();
}

std::string format_sequence(const ResidueSequence& t) {
    const auto terms = t.terms();
    return format_terms(terms);
}

}  // namespace ebc
