#ifndef PIDKIT_IO_HPP
#define PIDKIT_IO_HPP

/*
 * Distribution text format, JSON conversion, and report rendering.
 *
 * Text format: UTF-8, '#' starts a comment. First directive line is
 * `vars k`, then `cards c_1 ... c_k`, optionally `target j` (1-based; the
 * last axis by convention). Every remaining line is an outcome row
 * `v_1 ... v_k p` with 0-based outcome values; omitted outcomes are zero.
 */

#include "pidkit/distribution.hpp"
#include "pidkit/measures.hpp"

#include "json.hpp"  // vendored nlohmann::json

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pidkit {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

JointDistribution parse_distribution(std::istream& in);
JointDistribution load_distribution(const std::string& path);
void save_distribution(const JointDistribution& d, std::ostream& out);
void save_distribution(const JointDistribution& d, const std::string& path);

nlohmann::json distribution_to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const nlohmann::json& j);

/// 17-significant-digit decimal form that round-trips doubles.
std::string full_precision(double x);

/// PID rendering. `format` is one of "table", "csv", "json".
std::string render_pid(const PIDResult& result, const std::string& format);
std::string render_term_table(const LocalTermTable& table,
                              const std::string& format);

}  // namespace pidkit

#endif
