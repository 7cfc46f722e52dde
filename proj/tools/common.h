#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace frlp::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

// Bad flag combinations or values; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files; exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson };

Format ParseFormat(const std::string& name);

// Writes to `path`, or to stdout when the path is empty or "-".
void WriteOutput(const std::string& path, const std::string& text);
std::string ReadFile(const std::string& path);

// Worker count: FRLP_THREADS when set, else the hardware concurrency.
int ThreadCount();

// Runs fn(0..count-1) on up to ThreadCount() threads. The first exception
// thrown by any call is rethrown after all workers stop.
void ParallelFor(int count, const std::function<void(int)>& fn);

// Fixed notation with five decimals; "inf" / "nan" for non-finite values.
std::string Fixed5(double v);

}  // namespace frlp::cli
