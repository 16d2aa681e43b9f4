// Copyright 2026 The Pintegra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "experiment_config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "pintegra/error.h"

namespace pintegra::tools {

namespace {

using json = nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

double ReadDouble(const json& v, const std::string& path) {
  if (!v.is_number()) Fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Fail(path, "expected a finite number");
  return d;
}

double ReadPositive(const json& v, const std::string& path) {
  const double d = ReadDouble(v, path);
  if (!(d > 0.0)) Fail(path, "must be positive");
  return d;
}

int ReadInt(const json& v, const std::string& path) {
  if (!v.is_number_integer()) Fail(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < std::numeric_limits<int>::min() ||
      i > std::numeric_limits<int>::max()) {
    Fail(path, "integer out of range");
  }
  return static_cast<int>(i);
}

std::uint64_t ReadSeed(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  Fail(path, "expected a non-negative integer");
}

bool ReadBool(const json& v, const std::string& path) {
  if (!v.is_boolean()) Fail(path, "expected true or false");
  return v.get<bool>();
}

std::string ReadString(const json& v, const std::string& path) {
  if (!v.is_string()) Fail(path, "expected a string");
  return v.get<std::string>();
}

template <typename T, typename F>
std::vector<T> ReadList(const json& v, const std::string& path, F read,
                        bool allow_scalar = false) {
  std::vector<T> out;
  if (!v.is_array()) {
    if (allow_scalar) {
      out.push_back(read(v, path));
      return out;
    }
    Fail(path, "expected an array");
  }
  if (v.empty()) Fail(path, "must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Walks the members of one JSON object and rejects those never read.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) {
      Fail(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  void Field(const char* key,
             const std::function<void(const json&, const std::string&)>& fn) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it != object_.end()) fn(*it, Child(key));
  }

  bool Has(const char* key) const { return object_.contains(key); }

  void Finish() const {
    for (const auto& item : object_.items()) {
      if (!seen_.count(item.key())) Fail(Child(item.key()), "unknown field");
    }
  }

  std::string Child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

void Number(ObjectReader& r, const char* key, double& target) {
  r.Field(key, [&](const json& v, const std::string& p) {
    target = ReadDouble(v, p);
  });
}

void Integer(ObjectReader& r, const char* key, int& target) {
  r.Field(key, [&](const json& v, const std::string& p) {
    target = ReadInt(v, p);
  });
}

void ReadPendulum(const json& v, const std::string& path, PendulumParams& p) {
  ObjectReader r(v, path);
  Number(r, "mass", p.mass);
  Number(r, "length", p.length);
  Number(r, "damping", p.damping);
  Number(r, "gravity", p.gravity);
  Number(r, "dt", p.dt);
  r.Finish();
}

void ReadHovercraft(const json& v, const std::string& path,
                    HovercraftParams& p) {
  ObjectReader r(v, path);
  Number(r, "mass", p.mass);
  Number(r, "inertia", p.inertia);
  Number(r, "thruster_offset", p.thruster_offset);
  Number(r, "linear_drag", p.linear_drag);
  Number(r, "angular_drag", p.angular_drag);
  Number(r, "thrust_lag", p.thrust_lag);
  Number(r, "min_thrust", p.min_thrust);
  Number(r, "max_thrust", p.max_thrust);
  Number(r, "dt", p.dt);
  r.Finish();
}

void ReadQuadrotor(const json& v, const std::string& path,
                   QuadrotorParams& p) {
  ObjectReader r(v, path);
  Number(r, "mass", p.mass);
  Number(r, "arm_length", p.arm_length);
  Number(r, "inertia_xx", p.inertia_xx);
  Number(r, "inertia_yy", p.inertia_yy);
  Number(r, "inertia_zz", p.inertia_zz);
  Number(r, "thrust_coefficient", p.thrust_coefficient);
  Number(r, "moment_coefficient", p.moment_coefficient);
  Number(r, "linear_drag", p.linear_drag);
  Number(r, "gravity", p.gravity);
  Number(r, "rotor_lag", p.rotor_lag);
  Number(r, "min_rotor_speed", p.min_rotor_speed);
  Number(r, "max_rotor_speed", p.max_rotor_speed);
  Number(r, "dt", p.dt);
  Integer(r, "substeps", p.substeps);
  r.Finish();
}

void ReadCar(const json& v, const std::string& path, CarParams& p) {
  ObjectReader r(v, path);
  Number(r, "mass", p.mass);
  Number(r, "yaw_inertia", p.yaw_inertia);
  Number(r, "front_axle", p.front_axle);
  Number(r, "rear_axle", p.rear_axle);
  Number(r, "front_cornering_stiffness", p.front_cornering_stiffness);
  Number(r, "rear_cornering_stiffness", p.rear_cornering_stiffness);
  Number(r, "rolling_drag", p.rolling_drag);
  Number(r, "min_slip_speed", p.min_slip_speed);
  Number(r, "steer_lag", p.steer_lag);
  Number(r, "force_lag", p.force_lag);
  Number(r, "max_steer", p.max_steer);
  Number(r, "min_force", p.min_force);
  Number(r, "max_force", p.max_force);
  Number(r, "dt", p.dt);
  Integer(r, "substeps", p.substeps);
  r.Finish();
}

void ReadDdp(const json& v, const std::string& path, ExperimentConfig& c) {
  ObjectReader r(v, path);
  r.Field("enabled", [&](const json& x, const std::string& p) {
    c.run_ddp = ReadBool(x, p);
  });
  Integer(r, "max_iterations", c.ddp.max_iterations);
  Number(r, "convergence_tol", c.ddp.convergence_tol);
  Number(r, "regularization_init", c.ddp.regularization_init);
  Number(r, "regularization_min", c.ddp.regularization_min);
  Number(r, "regularization_max", c.ddp.regularization_max);
  Integer(r, "line_search_steps", c.ddp.line_search_steps);
  Number(r, "fd_epsilon", c.ddp.fd_epsilon);
  Number(r, "hessian_epsilon", c.ddp.hessian_epsilon);
  r.Finish();
}

void ReadSweep(const json& v, const std::string& path, SweepGrid& g) {
  ObjectReader r(v, path);
  r.Field("gamma", [&](const json& x, const std::string& p) {
    g.gamma = ReadList<double>(x, p, ReadDouble);
  });
  r.Field("K", [&](const json& x, const std::string& p) {
    g.num_rollouts = ReadList<int>(x, p, ReadInt);
  });
  r.Field("lambda", [&](const json& x, const std::string& p) {
    g.lambda = ReadList<double>(x, p, ReadPositive);
  });
  r.Field("threshold_ratio", [&](const json& x, const std::string& p) {
    g.threshold_ratio = ReadPositive(x, p);
  });
  r.Finish();
}

std::pair<int, int> LineAndColumn(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void Validate(const ExperimentConfig& c) {
  if (c.num_rollouts < 1) Fail("K", "must be at least 1");
  if (c.num_iterations < 0) Fail("U", "must be non-negative");
  if (!(c.lambda > 0.0)) Fail("lambda", "must be positive");
  if (!(c.gamma >= 0.0 && c.gamma < 1.0)) Fail("gamma", "must lie in [0, 1)");
  if (c.horizon && *c.horizon < 1) Fail("horizon", "must be at least 1");
  if (!(c.sim_duration >= 0.0)) Fail("sim_duration", "must be non-negative");
  for (std::size_t i = 0; i < c.sweep.gamma.size(); ++i) {
    const double g = c.sweep.gamma[i];
    if (!(g >= 0.0 && g < 1.0)) {
      Fail("sweep.gamma[" + std::to_string(i) + "]", "must lie in [0, 1)");
    }
  }
  for (std::size_t i = 0; i < c.sweep.num_rollouts.size(); ++i) {
    if (c.sweep.num_rollouts[i] < 1) {
      Fail("sweep.K[" + std::to_string(i) + "]", "must be at least 1");
    }
  }
  try {
    c.ddp.Validate();
  } catch (const ConfigError& e) {
    Fail("ddp", e.what());
  }
  for (Task task : c.tasks) {
    const std::string path = "dynamics." + std::string(TaskName(task));
    TaskInstance instance;
    try {
      instance = MakeConfiguredTask(c, task, Experiment::kConverge);
    } catch (const ConfigError& e) {
      Fail(path, e.what());
    }
    if (!c.noise_std.empty() &&
        static_cast<int>(c.noise_std.size()) != 1 &&
        static_cast<int>(c.noise_std.size()) !=
            instance.dynamics->control_dim()) {
      Fail("noise_std", "needs 1 or " +
                            std::to_string(instance.dynamics->control_dim()) +
                            " entries for task " + std::string(TaskName(task)));
    }
  }
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineAndColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": invalid JSON";
    throw ConfigError(msg.str());
  }

  ExperimentConfig c;
  ObjectReader r(doc, "");
  if (!r.Has("task")) Fail("task", "required field is missing");
  r.Field("task", [&](const json& v, const std::string& p) {
    c.tasks = ReadList<Task>(
        v, p,
        [](const json& x, const std::string& q) {
          try {
            return ParseTask(ReadString(x, q));
          } catch (const ConfigError& e) {
            if (x.is_string()) Fail(q, e.what());
            throw;
          }
        },
        /*allow_scalar=*/true);
  });
  r.Field("methods", [&](const json& v, const std::string& p) {
    c.methods = ReadList<Method>(
        v, p,
        [](const json& x, const std::string& q) {
          try {
            return ParseMethod(ReadString(x, q));
          } catch (const ConfigError& e) {
            if (x.is_string()) Fail(q, e.what());
            throw;
          }
        },
        /*allow_scalar=*/true);
  });
  r.Field("seeds", [&](const json& v, const std::string& p) {
    c.seeds = ReadList<std::uint64_t>(v, p, ReadSeed);
  });
  Integer(r, "K", c.num_rollouts);
  Integer(r, "U", c.num_iterations);
  Number(r, "lambda", c.lambda);
  Number(r, "gamma", c.gamma);
  r.Field("noise_std", [&](const json& v, const std::string& p) {
    c.noise_std = ReadList<double>(v, p, ReadPositive, /*allow_scalar=*/true);
  });
  r.Field("exponent", [&](const json& v, const std::string& p) {
    try {
      c.exponent = ParseWeightExponent(ReadString(v, p));
    } catch (const ConfigError& e) {
      if (v.is_string()) Fail(p, e.what());
      throw;
    }
  });
  r.Field("horizon", [&](const json& v, const std::string& p) {
    c.horizon = ReadInt(v, p);
  });
  Number(r, "adagrad_epsilon", c.adagrad_epsilon);
  Number(r, "adam_beta1", c.adam_beta1);
  Number(r, "adam_beta2", c.adam_beta2);
  Number(r, "adam_epsilon", c.adam_epsilon);
  Number(r, "adam_alpha", c.adam_alpha);
  r.Field("dynamics", [&](const json& v, const std::string& p) {
    ObjectReader d(v, p);
    d.Field("pendulum", [&](const json& x, const std::string& q) {
      ReadPendulum(x, q, c.models.pendulum);
    });
    d.Field("hovercraft", [&](const json& x, const std::string& q) {
      ReadHovercraft(x, q, c.models.hovercraft);
    });
    d.Field("quadrotor", [&](const json& x, const std::string& q) {
      ReadQuadrotor(x, q, c.models.quadrotor);
    });
    d.Field("car", [&](const json& x, const std::string& q) {
      ReadCar(x, q, c.models.car);
    });
    d.Finish();
  });
  r.Field("ddp", [&](const json& v, const std::string& p) {
    ReadDdp(v, p, c);
  });
  Number(r, "sim_duration", c.sim_duration);
  r.Field("sweep", [&](const json& v, const std::string& p) {
    ReadSweep(v, p, c.sweep);
  });
  r.Field("output", [&](const json& v, const std::string& p) {
    c.output = ReadString(v, p);
  });
  r.Field("record_timing", [&](const json& v, const std::string& p) {
    c.record_timing = ReadBool(v, p);
  });
  r.Finish();

  Validate(c);
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseExperimentConfig(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

TaskInstance MakeConfiguredTask(const ExperimentConfig& config, Task task,
                                Experiment experiment) {
  TaskInstance instance = MakeTask(task, config.models, experiment);
  if (config.horizon) instance.horizon = *config.horizon;
  return instance;
}

PathIntegralOptions MakeOptions(const ExperimentConfig& config, Task task,
                                Method method, std::uint64_t seed,
                                Experiment experiment) {
  PathIntegralOptions o;
  o.lambda = config.lambda;
  o.num_rollouts = config.num_rollouts;
  o.num_iterations = config.num_iterations;
  o.gamma = config.gamma;
  o.method = method;
  o.seed = seed;
  o.exponent = config.exponent;
  o.adagrad_epsilon = config.adagrad_epsilon;
  o.adam_beta1 = config.adam_beta1;
  o.adam_beta2 = config.adam_beta2;
  o.adam_epsilon = config.adam_epsilon;
  o.adam_alpha = config.adam_alpha;

  Eigen::VectorXd std_dev = DefaultNoiseStd(task, experiment);
  if (config.noise_std.size() == 1) {
    std_dev.setConstant(config.noise_std.front());
  } else if (!config.noise_std.empty()) {
    std_dev = Eigen::Map<const Eigen::VectorXd>(
        config.noise_std.data(),
        static_cast<Eigen::Index>(config.noise_std.size()));
  }
  o.sigma = DiagonalSigma(std_dev);
  return o;
}

}  // namespace pintegra::tools
