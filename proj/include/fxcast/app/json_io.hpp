#pragma once

#include <fxcast/error.hpp>

#include <json.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

// Field-list reflection: each serializable struct provides `reflect(T&, F&&)` calling
// f("name", member) once per member; encode/decode walk that list in both directions.

namespace fxcast::app {

using json = nlohmann::ordered_json;

namespace io {

struct Probe {
    template <class V>
    void operator()(const char*, V&) const {}
};

template <class T>
concept Reflectable = requires(T& t) { reflect(t, Probe{}); };

/// Enums provide `enum_names(E)` returning {value, name} pairs.
template <class E>
concept NamedEnum = std::is_enum_v<E> && requires(E e) { enum_names(e); };

template <class T>
json encode(const T& v);

template <class T>
void decode(const json& j, T& v);

template <class T>
struct is_vector : std::false_type {};
template <class T, class A>
struct is_vector<std::vector<T, A>> : std::true_type {};

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

template <class T>
struct is_map : std::false_type {};
template <class K, class V, class C, class A>
struct is_map<std::map<K, V, C, A>> : std::true_type {};

template <class T>
json encode(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        if (std::isnan(v)) return nullptr;
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    } else if constexpr (std::is_same_v<T, bool> || std::is_integral_v<T> || std::is_same_v<T, std::string>) {
        return v;
    } else if constexpr (NamedEnum<T>) {
        for (const auto& [value, name] : enum_names(v))
            if (value == v) return name;
        throw InvalidArgument("unnamed enum value");
    } else if constexpr (is_optional<T>::value) {
        return v ? encode(*v) : json(nullptr);
    } else if constexpr (is_vector<T>::value) {
        json a = json::array();
        for (const auto& x : v) a.push_back(encode(x));
        return a;
    } else if constexpr (is_map<T>::value) {
        json o = json::object();
        for (const auto& [k, x] : v) {
            if constexpr (std::is_same_v<typename T::key_type, std::string>) o[k] = encode(x);
            else o[encode(k).template get<std::string>()] = encode(x);
        }
        return o;
    } else if constexpr (Reflectable<T>) {
        json o = json::object();
        reflect(const_cast<T&>(v), [&](const char* name, auto& field) { o[name] = encode(field); });
        return o;
    } else {
        static_assert(sizeof(T) == 0, "type is not serializable");
    }
}

template <class T>
void decode(const json& j, T& v) {
    if constexpr (std::is_same_v<T, double>) {
        if (j.is_null()) v = std::numeric_limits<double>::quiet_NaN();
        else if (j.is_string()) v = j.get<std::string>() == "inf" ? std::numeric_limits<double>::infinity()
                                                                  : -std::numeric_limits<double>::infinity();
        else v = j.get<double>();
    } else if constexpr (std::is_same_v<T, bool> || std::is_integral_v<T> || std::is_same_v<T, std::string>) {
        v = j.get<T>();
    } else if constexpr (NamedEnum<T>) {
        const auto s = j.get<std::string>();
        for (const auto& [value, name] : enum_names(v))
            if (name == s) {
                v = value;
                return;
            }
        throw InvalidArgument("unknown value '" + s + "'");
    } else if constexpr (is_optional<T>::value) {
        if (j.is_null()) v.reset();
        else {
            typename T::value_type x{};
            decode(j, x);
            v = std::move(x);
        }
    } else if constexpr (is_vector<T>::value) {
        v.clear();
        for (const auto& e : j) {
            typename T::value_type x{};
            decode(e, x);
            v.push_back(std::move(x));
        }
    } else if constexpr (is_map<T>::value) {
        v.clear();
        for (auto it = j.begin(); it != j.end(); ++it) {
            typename T::key_type k{};
            if constexpr (std::is_same_v<typename T::key_type, std::string>) k = it.key();
            else decode(json(it.key()), k);
            typename T::mapped_type x{};
            decode(it.value(), x);
            v.emplace(std::move(k), std::move(x));
        }
    } else if constexpr (Reflectable<T>) {
        if (!j.is_object()) throw InvalidArgument("expected an object, got " + j.dump());
        std::size_t known = 0;
        reflect(v, [&](const char* name, auto& field) {
            if (!j.contains(name)) return;
            ++known;
            try {
                decode(j.at(name), field);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidArgument(std::string("field '") + name + "': " + e.what());
            } catch (const InvalidArgument& e) {
                throw InvalidArgument(std::string(name) + ": " + e.what());
            }
        });
        if (known != j.size()) {
            for (auto it = j.begin(); it != j.end(); ++it) {
                bool found = false;
                reflect(v, [&](const char* name, auto&) { found = found || it.key() == name; });
                if (!found) throw InvalidArgument("unknown key '" + it.key() + "'");
            }
        }
    } else {
        static_assert(sizeof(T) == 0, "type is not serializable");
    }
}

}  // namespace io
}  // namespace fxcast::app
