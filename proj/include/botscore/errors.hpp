#pragma once

#include <stdexcept>
#include <string>

namespace botscore {

// Base for every error raised by the library. Subclasses map onto the
// CLI exit codes and HTTP statuses in cli.cpp / service.cpp.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Document is well-formed JSON but violates the snapshot schema.
class SchemaError : public Error {
public:
    SchemaError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class InsufficientData : public Error { public: using Error::Error; };
class EmptyNode : public Error { public: using Error::Error; };
class SingleClassError : public Error { public: using Error::Error; };
class RegistryMismatch : public Error { public: using Error::Error; };
class TooFewSamples : public Error { public: using Error::Error; };
class StorageError : public Error { public: using Error::Error; };
class EmptyStore : public Error { public: using Error::Error; };
class NotFound : public Error { public: using Error::Error; };
class UpstreamError : public Error { public: using Error::Error; };
class LexiconError : public Error { public: using Error::Error; };
class MissingFile : public Error { public: using Error::Error; };
class ModelFormatError : public Error { public: using Error::Error; };

}  // namespace botscore
