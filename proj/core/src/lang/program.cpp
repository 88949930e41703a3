#include "cminer/lang/program.hpp"

#include <cctype>

namespace cminer::lang {

std::optional<std::string> getterField(const std::string& methodName) {
  auto demangle = [](const std::string& name, size_t prefixLen) -> std::optional<std::string> {
    if (name.size() <= prefixLen) return std::nullopt;
    if (!std::isupper(static_cast<unsigned char>(name[prefixLen]))) return std::nullopt;
    std::string field = name.substr(prefixLen);
    field[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(field[0])));
    return field;
  };
  if (methodName.rfind("get", 0) == 0) return demangle(methodName, 3);
  if (methodName.rfind("is", 0) == 0) return demangle(methodName, 2);
  return std::nullopt;
}

std::string collectionElementType(const std::string& type) {
  for (const char* prefix : {"List<", "Set<", "Collection<"}) {
    const std::string p(prefix);
    if (type.rfind(p, 0) == 0 && type.back() == '>')
      return type.substr(p.size(), type.size() - p.size() - 1);
  }
  return {};
}

const ClassDecl* Program::findClass(const std::string& name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second;
}

const EnumDecl* Program::findEnum(const std::string& name) const {
  auto it = enums_.find(name);
  return it == enums_.end() ? nullptr : it->second;
}

const MethodDecl* Program::findMethod(const std::string& className,
                                      const std::string& methodName) const {
  const ClassDecl* cls = findClass(className);
  if (!cls) return nullptr;
  for (const MethodDecl& m : cls->methods)
    if (m.name == methodName) return &m;
  return nullptr;
}

const ClassDecl* Program::classOf(const MethodDecl* m) const {
  auto it = classOfMethod_.find(m);
  return it == classOfMethod_.end() ? nullptr : it->second;
}

const std::string& Program::sourceOf(const MethodDecl* m) const {
  static const std::string empty;
  const ClassDecl* cls = classOf(m);
  if (!cls) return empty;
  auto it = unitOfClass_.find(cls);
  return it == unitOfClass_.end() ? empty : it->second->source;
}

std::vector<std::string> Program::pathsForField(const std::string& fieldName) const {
  std::vector<std::string> out;
  auto [lo, hi] = pathsBySegment_.equal_range(fieldName);
  for (auto it = lo; it != hi; ++it) out.push_back(it->second);
  return out;
}

namespace {

void mapModelFields(const Program& p, const ClassDecl* cls, const std::string& prefix,
                    std::set<const ClassDecl*>& onPath,
                    std::map<std::string, std::string>& paths) {
  if (onPath.contains(cls)) return;  // cycle guard
  onPath.insert(cls);
  for (const FieldDecl& f : cls->fields) {
    const std::string path = prefix.empty() ? f.name : prefix + "." + f.name;
    paths[path] = f.type;
    std::string nested = f.type;
    if (const std::string elem = collectionElementType(f.type); !elem.empty())
      nested = elem;
    const ClassDecl* fieldClass = p.findClass(nested);
    if (fieldClass) mapModelFields(p, fieldClass, path, onPath, paths);
  }
  onPath.erase(cls);
}

}  // namespace

Program resolveProgram(std::vector<Unit> units, const ResolveConfig& config) {
  Program p;
  p.units_ = std::move(units);
  p.controllers_ = config.controllers;

  for (const Unit& u : p.units_) {
    for (const ClassDecl& c : u.classes) {
      if (!p.classes_.emplace(c.name, &c).second)
        throw ResolveError("duplicate class '" + c.name + "'");
      p.unitOfClass_[&c] = &u;
      std::set<std::string> methodNames;
      for (const MethodDecl& m : c.methods) {
        if (!methodNames.insert(m.name).second)
          throw ResolveError("method overloads are unsupported: " + c.name + "." + m.name);
        p.classOfMethod_[&m] = &c;
      }
    }
    for (const EnumDecl& e : u.enums) {
      if (!p.enums_.emplace(e.name, &e).second)
        throw ResolveError("duplicate enum '" + e.name + "'");
    }
  }

  for (const std::string& ctrl : config.controllers) {
    const size_t dot = ctrl.find('.');
    if (dot == std::string::npos)
      throw ResolveError("controller reference must be Class.method: " + ctrl);
    if (!p.findMethod(ctrl.substr(0, dot), ctrl.substr(dot + 1)))
      throw ResolveError("unresolved controller " + ctrl);
  }

  for (const std::string& model : config.requestModels) {
    const ClassDecl* cls = p.findClass(model);
    if (!cls) throw ResolveError("unknown request model class '" + model + "'");
    std::set<const ClassDecl*> onPath;
    mapModelFields(p, cls, "", onPath, p.modelPaths_);
  }

  for (const auto& [path, type] : p.modelPaths_) {
    const size_t dot = path.rfind('.');
    p.pathsBySegment_.emplace(dot == std::string::npos ? path : path.substr(dot + 1), path);
  }
  return p;
}

}  // namespace cminer::lang
