#pragma once

#include <string>
#include <utility>
#include <variant>

namespace ocam::core {

enum class Errc {
    invalid_argument,
    out_of_range,
    io_error,
    parse_error,
    data_error,
    undefined_result,
};

struct Error {
    Errc code;
    std::string message;
};

/// Value-or-error carrier used by operations whose failure is a data
/// condition rather than a programming bug.
template <typename T>
class Result {
public:
    Result(T value) : state_(std::move(value)) {}
    Result(Error error) : state_(std::move(error)) {}

    static Result failure(Errc code, std::string message) {
        return Result(Error{code, std::move(message)});
    }

    bool ok() const { return std::holds_alternative<T>(state_); }
    explicit operator bool() const { return ok(); }

    const T& value() const& { return std::get<T>(state_); }
    T& value() & { return std::get<T>(state_); }
    T&& value() && { return std::get<T>(std::move(state_)); }
    const Error& error() const { return std::get<Error>(state_); }

private:
    std::variant<T, Error> state_;
};

}  // namespace ocam::core
