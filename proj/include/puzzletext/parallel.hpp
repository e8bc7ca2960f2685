#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace puzzletext {

// Reference implementation: evaluates fn(0..n-1) in index order.
template <class Fn>
auto serial_map(std::size_t n, Fn&& fn) {
    using T = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
}

// OpenMP version of serial_map. Results are stored by index, so the output
// is identical to serial_map regardless of scheduling. The exception thrown
// for the lowest failing index is rethrown after the loop.
template <class Fn>
auto parallel_map(std::size_t n, int jobs, Fn&& fn) {
    using T = std::invoke_result_t<Fn&, std::size_t>;
    if (jobs <= 1 || n < 2) return serial_map(n, fn);

    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
    for (long i = 0; i < count; ++i) {
        try {
            slots[i].emplace(fn(static_cast<std::size_t>(i)));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace puzzletext
