#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace s3sr {

// Base class for all library errors. `name()` is the stable identifier used
// in diagnostics and CLI output; `what()` carries the detail message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define S3SR_DEFINE_ERROR(Name)                                        \
    class Name final : public Error {                                  \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

S3SR_DEFINE_ERROR(NonUnitInput);
S3SR_DEFINE_ERROR(EmptyInput);
S3SR_DEFINE_ERROR(NonHorizontalPath);
S3SR_DEFINE_ERROR(StepSizeUnderflow);
S3SR_DEFINE_ERROR(MonitorBreach);
S3SR_DEFINE_ERROR(ChartSingularity);
S3SR_DEFINE_ERROR(InvalidParam);
S3SR_DEFINE_ERROR(InvalidOmega);
S3SR_DEFINE_ERROR(DomainError);
S3SR_DEFINE_ERROR(VerticalLineCase);
S3SR_DEFINE_ERROR(HorizontalSphereCase);
S3SR_DEFINE_ERROR(NoSolutionInBudget);
S3SR_DEFINE_ERROR(BasePointMismatch);
S3SR_DEFINE_ERROR(ResolutionTooCoarse);

#undef S3SR_DEFINE_ERROR

} // namespace s3sr
