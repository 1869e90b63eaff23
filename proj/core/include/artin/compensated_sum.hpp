#pragma once

#include <cmath>

namespace artin {

/// Neumaier-compensated running sum.
template <typename T>
struct CompensatedSum {
    T sum = T{0};
    T compensation = T{0};

    void add(T value) {
        const T t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            compensation += (sum - t) + value;
        else
            compensation += (value - t) + sum;
        sum = t;
    }

    void merge(const CompensatedSum& other) {
        add(other.sum);
        add(other.compensation);
    }

    T value() const { return sum + compensation; }

    friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;
};

} // namespace artin
