#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cminer/lang/ast.hpp"

namespace cminer::lang {

struct ResolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolveConfig {
  std::vector<std::string> controllers;    // "Class.method"
  std::vector<std::string> requestModels;  // root request-model classes
};

/// Demangles getter names by convention: getOffset/isActive -> offset/active.
std::optional<std::string> getterField(const std::string& methodName);

/// Resolved view over the parsed units: class/enum lookup, unique method
/// resolution, and the parameter paths derived from the request models
/// (field names correspond directly to request parameters, nesting walks
/// model-typed fields).
class Program {
 public:
  Program() = default;
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;

  const ClassDecl* findClass(const std::string& name) const;
  const EnumDecl* findEnum(const std::string& name) const;
  const MethodDecl* findMethod(const std::string& className,
                               const std::string& methodName) const;
  const ClassDecl* classOf(const MethodDecl* m) const;
  const std::string& sourceOf(const MethodDecl* m) const;

  /// path -> declared field type name ("" for the synthetic root).
  const std::map<std::string, std::string>& modelPaths() const { return modelPaths_; }

  /// All model paths whose last segment equals `fieldName`.
  std::vector<std::string> pathsForField(const std::string& fieldName) const;

  const std::vector<std::string>& controllers() const { return controllers_; }
  const std::vector<Unit>& units() const { return units_; }

  friend Program resolveProgram(std::vector<Unit> units, const ResolveConfig& config);

 private:
  std::vector<Unit> units_;
  std::vector<std::string> controllers_;
  std::map<std::string, const ClassDecl*> classes_;
  std::map<std::string, const EnumDecl*> enums_;
  std::map<const ClassDecl*, const Unit*> unitOfClass_;
  std::map<const MethodDecl*, const ClassDecl*> classOfMethod_;
  std::map<std::string, std::string> modelPaths_;
  std::multimap<std::string, std::string> pathsBySegment_;
};

/// Links units into a Program: verifies controller references, rejects
/// overloads, and maps request-model fields to parameter paths.
Program resolveProgram(std::vector<Unit> units, const ResolveConfig& config);

/// Strips one generic layer: "List<Split>" -> "Split"; returns empty when
/// the type is not a collection surface type.
std::string collectionElementType(const std::string& type);

}  // namespace cminer::lang
