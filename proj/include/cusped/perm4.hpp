#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cusped {

// Permutation of {0,1,2,3}, stored as the image array: p[i] is where i goes.
struct Perm4 {
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};

    constexpr Perm4() = default;
    constexpr Perm4(int a, int b, int c, int d)
        : img{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    constexpr int operator[](int i) const { return img[i]; }

    constexpr bool is_identity() const {
        return img[0] == 0 && img[1] == 1 && img[2] == 2 && img[3] == 3;
    }

    constexpr Perm4 inverse() const {
        Perm4 q;
        for (int i = 0; i < 4; ++i) q.img[img[i]] = std::uint8_t(i);
        return q;
    }

    // (a * b)[i] = a[b[i]]: apply b first, then a.
    friend constexpr Perm4 operator*(const Perm4& a, const Perm4& b) {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[i] = a.img[b.img[i]];
        return r;
    }

    constexpr int sign() const {
        int s = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img[i] > img[j]) s = -s;
        return s;
    }

    // Lexicographic index in S4, 0..23.
    constexpr int rank() const {
        int r = 0;
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (img[j] < img[i]) ++smaller;
            int fact = 1;
            for (int k = 2; k <= 3 - i; ++k) fact *= k;
            r += smaller * fact;
        }
        return r;
    }

    static Perm4 from_rank(int r);

    friend constexpr bool operator==(const Perm4& a, const Perm4& b) { return a.img == b.img; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < 4; ++i) s.push_back(char('0' + img[i]));
        return s;
    }

    // Parses "2031" style image strings; must be a permutation of 0123.
    static Perm4 parse(const std::string& s);
};

inline Perm4 Perm4::from_rank(int r) {
    if (r < 0 || r >= 24) throw std::invalid_argument("permutation rank out of range");
    std::array<std::uint8_t, 4> pool{0, 1, 2, 3};
    Perm4 p;
    int facts[4] = {6, 2, 1, 1};
    int used = 0;
    for (int i = 0; i < 4; ++i) {
        int f = facts[i];
        int k = (i < 3) ? r / f : 0;
        r %= f;
        int cnt = 0;
        for (int j = used; j < 4; ++j) {
            if (cnt == k) {
                p.img[i] = pool[j];
                for (int t = j; t > used; --t) pool[t] = pool[t - 1];
                ++used;
                break;
            }
            ++cnt;
        }
    }
    return p;
}

inline Perm4 Perm4::parse(const std::string& s) {
    if (s.size() != 4) throw std::invalid_argument("permutation must have 4 digits: " + s);
    Perm4 p;
    bool seen[4] = {false, false, false, false};
    for (int i = 0; i < 4; ++i) {
        char c = s[i];
        if (c < '0' || c > '3') throw std::invalid_argument("bad permutation digit in " + s);
        int v = c - '0';
        if (seen[v]) throw std::invalid_argument("repeated digit in permutation " + s);
        seen[v] = true;
        p.img[i] = std::uint8_t(v);
    }
    return p;
}

}  // namespace cusped
