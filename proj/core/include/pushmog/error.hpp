#pragma once

#include <stdexcept>
#include <string>

namespace pushmog {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "everything else" can catch ValidationError.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input documents, shapes, or parameters that violate a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class InvalidShape : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GripperConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Geometric query issued against a state that breaks its precondition
// (e.g. first-contact query on shapes that already overlap).
class InvalidState : public Error {
public:
    using Error::Error;
};

class NoIntersection : public Error {
public:
    using Error::Error;
};

class WorkspaceTooSmall : public Error {
public:
    using Error::Error;
};

class UngraspableObject : public Error {
public:
    UngraspableObject(int object_id, const std::string& what)
        : Error(what), object_id_(object_id) {}
    int object_id() const noexcept { return object_id_; }

private:
    int object_id_;
};

class UnknownObject : public Error {
public:
    UnknownObject(int object_id, const std::string& what)
        : Error(what), object_id_(object_id) {}
    int object_id() const noexcept { return object_id_; }

private:
    int object_id_;
};

class UndefinedMetric : public Error {
public:
    using Error::Error;
};

}  // namespace pushmog
