#pragma once

#include <stdexcept>
#include <string>

namespace emerge {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not follow its declared format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Run configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A stage input produced by an earlier stage is missing.
class MissingArtifactError : public Error {
public:
    explicit MissingArtifactError(std::string path)
        : Error("missing artifact: " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Data violates an invariant (duplicate ids, empty corpus, unknown term, ...).
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace emerge
