#ifndef CHOICELAB_TESTS_SUPPORT_HPP
#define CHOICELAB_TESTS_SUPPORT_HPP

#include "choicelab/joint_choice.hpp"
#include "choicelab/random_utility.hpp"
#include "choicelab/rng.hpp"

#include <array>
#include <vector>

namespace choicelab::testing {

inline Lottery random_lottery(Rng& rng, long den = 32) {
    for (;;) {
        const long x = static_cast<long>(rng.next() % (den + 1));
        const long y = static_cast<long>(rng.next() % (den + 1));
        if (x + y <= den) return Lottery(rat(x, den), rat(y, den));
    }
}

inline Menu random_menu(Rng& rng, size_t size, long den = 32) {
    std::vector<Lottery> ls;
    while (ls.size() < size) {
        const Lottery cand = random_lottery(rng, den);
        bool dup = false;
        for (const auto& l : ls)
            if (l == cand) dup = true;
        if (!dup) ls.push_back(cand);
    }
    return Menu(std::move(ls));
}

// A betweenness preference drawn from the families the library supports:
// EU directions, weighted-utility functionals, and semi-weighted gluings.
inline Preference random_betweenness_preference(Rng& rng) {
    const std::vector<Rat> g_pool{rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3),
                                  rat(3, 2), rat(2),    rat(3)};
    switch (rng.next() % 3) {
        case 0: {
            // monotone-ish EU direction: northwest-pointing grid vector
            const long dx = -static_cast<long>(rng.next() % 4) - 1;
            const long dy = static_cast<long>(rng.next() % 4) + 1;
            return EUPreference(rat(dx, 4), rat(dy, 4));
        }
        case 1: {
            const Rat u3 = rat(1 + static_cast<long>(rng.next() % 6), 8); // in (0,1)
            const Rat g3 = g_pool[rng.next() % g_pool.size()];
            return WUFunctional({rat(0), rat(1), u3}, {rat(1), rat(1), g3});
        }
        default: {
            const Rat u3 = rat(2 + static_cast<long>(rng.next() % 5), 8);
            Rat g_hi = g_pool[rng.next() % g_pool.size()];
            Rat g_lo = g_pool[rng.next() % g_pool.size()];
            if (g_hi == g_lo) g_lo = g_hi + 1;
            const WUFunctional up({rat(0), rat(1), u3}, {rat(1), rat(1), g_hi});
            const WUFunctional low({rat(0), rat(1), u3}, {rat(1), rat(1), g_lo});
            return SemiWeightedPreference(up, low, u3);
        }
    }
}

// Four-event configurations for the decomposition suite. Parallel-heavy
// modes keep the rarer dispatch cases in play.
inline std::array<choicelab::BinaryEvent, 4> random_event_config(Rng& rng) {
    using choicelab::BinaryEvent;
    const long den = 20;
    auto lattice = [&](long num_x, long num_y) {
        return Lottery(rat(num_x, den), rat(num_y, den));
    };
    auto rand_lottery = [&]() {
        for (;;) {
            const long x = static_cast<long>(rng.next() % (den + 1));
            const long y = static_cast<long>(rng.next() % (den + 1));
            if (x + y <= den) return lattice(x, y);
        }
    };
    const std::vector<std::pair<long, long>> dirs{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
    auto directed_pair = [&](std::pair<long, long> dir) -> std::pair<Lottery, Lottery> {
        for (;;) {
            const Lottery base = rand_lottery();
            for (long scale : {2L, 3L, 4L}) {
                const Rat qx = base.x + rat(dir.first, den * scale / 2);
                const Rat qy = base.y + rat(dir.second, den * scale / 2);
                const Lottery q(qx, qy);
                if (q.in_simplex() && !(q == base)) return {base, q};
            }
        }
    };
    auto random_pair = [&]() -> std::pair<Lottery, Lottery> {
        for (;;) {
            const Lottery p = rand_lottery(), q = rand_lottery();
            if (!(p == q)) return {p, q};
        }
    };

    for (;;) {
        std::vector<std::pair<Lottery, Lottery>> pairs;
        switch (rng.next() % 6) {
            case 0:
            case 1:
                for (int i = 0; i < 4; ++i) pairs.push_back(random_pair());
                break;
            case 2: {
                const auto dir = dirs[rng.next() % dirs.size()];
                pairs.push_back(directed_pair(dir));
                pairs.push_back(directed_pair(dir));
                pairs.push_back(random_pair());
                pairs.push_back(random_pair());
                break;
            }
            case 3: {
                const auto d1 = dirs[rng.next() % dirs.size()];
                const auto d2 = dirs[rng.next() % dirs.size()];
                pairs.push_back(directed_pair(d1));
                pairs.push_back(directed_pair(d1));
                pairs.push_back(directed_pair(d2));
                pairs.push_back(directed_pair(d2));
                break;
            }
            case 4: {
                const auto dir = dirs[rng.next() % dirs.size()];
                for (int i = 0; i < 4; ++i) pairs.push_back(directed_pair(dir));
                break;
            }
            default: {
                const auto dir = dirs[rng.next() % dirs.size()];
                pairs.push_back(directed_pair(dir));
                for (int i = 0; i < 3; ++i) pairs.push_back(random_pair());
                break;
            }
        }
        // random orientation of each event
        for (auto& [p, q] : pairs)
            if (rng.coin()) std::swap(p, q);
        // reject coincident lines
        bool ok = true;
        for (size_t i = 0; i < 4 && ok; ++i)
            for (size_t j = i + 1; j < 4 && ok; ++j) {
                const auto li = RatLine::through(pairs[i].first.pt(), pairs[i].second.pt());
                const auto lj = RatLine::through(pairs[j].first.pt(), pairs[j].second.pt());
                if (li.same_line(lj)) ok = false;
            }
        if (!ok) continue;
        return {BinaryEvent(pairs[0].first, pairs[0].second),
                BinaryEvent(pairs[1].first, pairs[1].second),
                BinaryEvent(pairs[2].first, pairs[2].second),
                BinaryEvent(pairs[3].first, pairs[3].second)};
    }
}

inline FiniteMixture random_rieu(Rng& rng, size_t max_components = 4) {
    const size_t n = 2 + rng.next() % (max_components - 1);
    std::vector<long> raw;
    long total = 0;
    for (size_t i = 0; i < n; ++i) {
        raw.push_back(1 + static_cast<long>(rng.next() % 5));
        total += raw.back();
    }
    std::vector<std::pair<Preference, Rat>> comps;
    for (size_t i = 0; i < n; ++i)
        comps.emplace_back(random_betweenness_preference(rng), rat(raw[i], total));
    return FiniteMixture(std::move(comps));
}

} // namespace choicelab::testing

#endif
