#include "diqkd/recon.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "diqkd/extract/toeplitz.hpp"

namespace diqkd::recon {

using protocol::MessageKind;
using protocol::MessageLog;
using protocol::Party;

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binary_entropy: q outside [0, 1]");
    if (q == 0.0 || q == 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

std::size_t tag_length(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("tag_length: eps outside (0, 1)");
    return static_cast<std::size_t>(std::ceil(std::log2(2.0 / eps)));
}

std::size_t first_block_size(double q_est, std::size_t n, const ReconConfig& config) {
    if (!(q_est > 0.0)) throw std::invalid_argument("first_block_size: q_est must be positive");
    const double k = std::ceil(config.first_block_factor / q_est);
    return std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(k)));
}

namespace {

struct Pass {
    std::vector<std::size_t> order;        // permuted positions
    std::size_t block_size = 1;
    std::vector<std::size_t> block_of;     // position -> block index
    BitVector bob_parity;                  // disclosed per block

    std::size_t blocks() const { return bob_parity.size(); }
    std::size_t begin(std::size_t block) const { return block * block_size; }
    std::size_t end(std::size_t block) const { return std::min(order.size(), (block + 1) * block_size); }
};

class Reconciler {
public:
    Reconciler(std::span<const Bit> bob, BitVector work, MessageLog& log)
        : bob_(bob), work_(std::move(work)), log_(log) {}

    void run_pass(std::size_t block_size, Rng& perm_rng) {
        Pass pass;
        const std::size_t n = work_.size();
        pass.order.resize(n);
        std::iota(pass.order.begin(), pass.order.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(perm_rng.uniform_below(i));
            std::swap(pass.order[i - 1], pass.order[j]);
        }
        pass.block_size = block_size;
        const std::size_t count = (n + block_size - 1) / block_size;
        pass.block_of.resize(n);
        pass.bob_parity.resize(count);
        for (std::size_t b = 0; b < count; ++b) {
            for (std::size_t k = pass.begin(b); k < pass.end(b); ++k) pass.block_of[pass.order[k]] = b;
            pass.bob_parity[b] = range_parity(bob_, pass, pass.begin(b), pass.end(b));
        }
        send_bits(Party::Bob, MessageKind::ReconParities, pass.bob_parity);
        passes_.push_back(std::move(pass));

        BitVector mismatch(count);
        for (std::size_t b = 0; b < count; ++b) mismatch[b] = mismatched(passes_.size() - 1, b) ? 1 : 0;
        send_bits(Party::Alice, MessageKind::ReconMismatch, mismatch);

        cascade();
    }

    const BitVector& corrected() const { return work_; }
    std::size_t corrections() const { return corrections_; }

private:
    struct Item {
        std::size_t pass;
        std::size_t block;
        std::size_t lo;
        std::size_t hi;
    };

    static Bit range_parity(std::span<const Bit> bits, const Pass& pass, std::size_t lo, std::size_t hi) {
        Bit p = 0;
        for (std::size_t k = lo; k < hi; ++k) p ^= bits[pass.order[k]];
        return p;
    }

    bool mismatched(std::size_t p, std::size_t b) const {
        const Pass& pass = passes_[p];
        return range_parity(work_, pass, pass.begin(b), pass.end(b)) != pass.bob_parity[b];
    }

    void send_bits(Party from, MessageKind kind, const BitVector& bits) {
        log_.send(from, kind, pack_bits(bits), bits.size());
    }

    // Resolves odd-parity blocks pass by pass, lowest pass first. Blocks of
    // one pass are disjoint, so a batch never locates the same error twice.
    void cascade() {
        while (true) {
            std::vector<Item> batch;
            for (std::size_t p = 0; p < passes_.size() && batch.empty(); ++p) {
                for (std::size_t b = 0; b < passes_[p].blocks(); ++b) {
                    if (mismatched(p, b)) batch.push_back({p, b, passes_[p].begin(b), passes_[p].end(b)});
                }
            }
            if (batch.empty()) return;
            bisect(batch);
        }
    }

    void bisect(std::vector<Item>& items) {
        while (true) {
            BitVector bob_bits;
            std::vector<std::size_t> active;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (items[i].hi - items[i].lo > 1) active.push_back(i);
            }
            if (active.empty()) break;
            bob_bits.reserve(active.size());
            for (auto i : active) {
                const Item& it = items[i];
                const std::size_t mid = it.lo + (it.hi - it.lo) / 2;
                bob_bits.push_back(range_parity(bob_, passes_[it.pass], it.lo, mid));
            }
            send_bits(Party::Bob, MessageKind::ReconBisectParity, bob_bits);

            BitVector choice(active.size());
            for (std::size_t k = 0; k < active.size(); ++k) {
                Item& it = items[active[k]];
                const std::size_t mid = it.lo + (it.hi - it.lo) / 2;
                const bool first_half_bad = range_parity(work_, passes_[it.pass], it.lo, mid) != bob_bits[k];
                choice[k] = first_half_bad ? 0 : 1;
                if (first_half_bad) {
                    it.hi = mid;
                } else {
                    it.lo = mid;
                }
            }
            send_bits(Party::Alice, MessageKind::ReconBisectChoice, choice);
        }
        for (const auto& it : items) {
            work_[passes_[it.pass].order[it.lo]] ^= 1u;
            ++corrections_;
        }
    }

    std::span<const Bit> bob_;
    BitVector work_;
    MessageLog& log_;
    std::vector<Pass> passes_;
    std::size_t corrections_ = 0;
};

}  // namespace

ReconResult reconcile(std::span<const Bit> alice, std::span<const Bit> bob, double q_est, double eps, Rng& alice_rng,
                      MessageLog& log, const ReconConfig& config) {
    if (alice.size() != bob.size()) throw std::invalid_argument("reconcile: length mismatch");
    if (alice.empty()) throw std::invalid_argument("reconcile: empty strings");
    if (!(q_est >= 0.0 && q_est <= 0.25)) throw std::invalid_argument("reconcile: q_est outside [0, 0.25]");
    if (config.passes == 0) throw std::invalid_argument("reconcile: need at least one pass");
    const std::size_t tag_bits = tag_length(eps);
    const std::size_t n = alice.size();
    const std::size_t first_message = log.messages().size();

    ReconResult result;
    result.tag_bits = tag_bits;
    Reconciler rec(bob, BitVector(alice.begin(), alice.end()), log);

    if (q_est > 0.0) {
        const std::uint64_t perm_seed = alice_rng.next_u64();
        std::vector<std::uint8_t> seed_bytes;
        append_u64_be(seed_bytes, perm_seed);
        log.send(Party::Alice, MessageKind::ReconPermutationSeed, std::move(seed_bytes));
        Rng perm_rng(perm_seed);
        std::size_t block = first_block_size(q_est, n, config);
        for (std::size_t p = 0; p < config.passes; ++p) {
            rec.run_pass(block, perm_rng);
            result.passes = p + 1;
            if (block >= n) break;
            block = std::min(n, block * 2);
        }
    }
    result.corrected = rec.corrected();
    result.corrections = rec.corrections();

    const auto tag_seed = extract::ToeplitzSeed::random(n, tag_bits, alice_rng);
    log.send(Party::Alice, MessageKind::ReconTagSeed, pack_bits(tag_seed.bits()), tag_seed.bits().size());
    const BitVector bob_tag = extract::toeplitz_hash(bob, tag_seed);
    log.send(Party::Bob, MessageKind::ReconTag, pack_bits(bob_tag), bob_tag.size());
    const BitVector alice_tag = extract::toeplitz_hash(result.corrected, tag_seed);
    result.success = alice_tag == bob_tag;
    const BitVector verdict{static_cast<Bit>(result.success ? 1 : 0)};
    log.send(Party::Alice, MessageKind::ReconVerdict, pack_bits(verdict), 1);

    result.leakage_bits = 0;
    const auto& messages = log.messages();
    for (std::size_t i = first_message; i < messages.size(); ++i)
        if (protocol::is_recon_leakage(messages[i])) result.leakage_bits += messages[i].bits;
    return result;
}

ReconResult reconcile(std::span<const Bit> alice, std::span<const Bit> bob, double q_est, double eps, Rng& alice_rng,
                      const ReconConfig& config) {
    MessageLog log;
    return reconcile(alice, bob, q_est, eps, alice_rng, log, config);
}

}  // namespace diqkd::recon
