#pragma once

#include <stdexcept>
#include <string>

namespace effortcast {

/// Base class for all domain errors raised by the pipeline.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Precondition violation (bad fractions, mismatched vector sizes, ...).
class InvalidArgumentError : public Error { public: using Error::Error; };

// dataset
class MalformedCsvError : public Error { public: using Error::Error; };
class UnparsableNumericError : public Error { public: using Error::Error; };
class UnknownFeatureError : public Error { public: using Error::Error; };
class EmptyDatasetError : public Error { public: using Error::Error; };
class PinnedTierLargerThanSplitError : public Error { public: using Error::Error; };

// correlate
class NoNumericPairsError : public Error { public: using Error::Error; };

// promptgen
class MissingTargetError : public Error { public: using Error::Error; };
class UnparsableCompletionError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// llmclient
class AuthFailureError : public Error { public: using Error::Error; };
class ProviderRejectedCorpusError : public Error { public: using Error::Error; };
class NetworkFailureError : public Error { public: using Error::Error; };
class UnknownJobError : public Error { public: using Error::Error; };
class RateLimitedError : public Error { public: using Error::Error; };

// baselines
class EmptyTrainingSetError : public Error { public: using Error::Error; };
class KExceedsTrainingSizeError : public Error { public: using Error::Error; };
class SingularSystemError : public Error { public: using Error::Error; };
class DivergenceDetectedError : public Error { public: using Error::Error; };

// eval
class EmptyPredictionSetError : public Error { public: using Error::Error; };
class TooFewPointsError : public Error { public: using Error::Error; };

// cli / config
class ConfigError : public Error { public: using Error::Error; };

}  // namespace effortcast
