#include "lunerf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lunerf/errors.hpp"

namespace lunerf {

Rotation Rotation::from_matrix(const Mat3& m) {
  const double orth = (m.transpose() * m - Mat3::Identity()).norm();
  if (orth > kRotationTol) {
    throw NumericError("matrix is not orthonormal (|R^T R - I| = " + std::to_string(orth) + ")");
  }
  if (std::abs(m.determinant() - 1.0) > kRotationTol) {
    throw NumericError("matrix determinant is not +1 (det = " + std::to_string(m.determinant()) + ")");
  }
  return from_matrix_unchecked(m);
}

void CameraIntrinsics::validate() const {
  if (!(focal > 0.0)) throw ConfigError("intrinsics: focal must be > 0");
  if (width <= 0 || height <= 0) throw ConfigError("intrinsics: image size must be positive");
  if (principal_point.x() < 0 || principal_point.x() > width || principal_point.y() < 0 ||
      principal_point.y() > height) {
    throw ConfigError("intrinsics: principal point outside image bounds");
  }
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidTransform inverse(const RigidTransform& p) {
  RigidTransform out;
  out.rotation = p.rotation.transpose();
  out.translation = -(out.rotation * p.translation);
  return out;
}

RigidTransform relative_pose(const RigidTransform& p_i, const RigidTransform& p_j) {
  return compose(p_j, inverse(p_i));
}

Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return m;
}

Rotation exp_so3(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 k = hat(omega);
  double a, b;  // R = I + a*K + b*K^2
  if (theta < 1e-8) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  return Rotation::from_matrix_unchecked(Mat3::Identity() + a * k + b * (k * k));
}

Vec3 log_so3(const Rotation& r) {
  const Mat3& m = r.matrix();
  const double tr = m.trace();
  if (tr <= -1.0 + 1e-9) {
    throw NumericError("log_so3: rotation angle at pi, axis ambiguous");
  }
  const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  const double theta = std::acos(c);
  Vec3 v(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  if (theta < 1e-8) {
    return 0.5 * v * (1.0 + theta * theta / 6.0);
  }
  return v * (theta / (2.0 * std::sin(theta)));
}

std::array<Mat3, 3> exp_so3_jacobians(const Vec3& omega) {
  std::array<Mat3, 3> out;
  const double theta2 = omega.squaredNorm();
  const Mat3 r = exp_so3(omega).matrix();
  if (theta2 < 1e-14) {
    for (int k = 0; k < 3; ++k) out[k] = hat(Vec3::Unit(k));
    return out;
  }
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = Vec3::Unit(k);
    const Vec3 w = omega.cross((Mat3::Identity() - r) * e);
    out[k] = ((omega[k] * hat(omega) + hat(w)) / theta2) * r;
  }
  return out;
}

Rotation project_to_so3(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  if ((u * v.transpose()).determinant() < 0) d(2, 2) = -1.0;
  return Rotation::from_matrix_unchecked(u * d * v.transpose());
}

Rotation rot_x(double radians) { return exp_so3(Vec3(radians, 0, 0)); }
Rotation rot_y(double radians) { return exp_so3(Vec3(0, radians, 0)); }
Rotation rot_z(double radians) { return exp_so3(Vec3(0, 0, radians)); }

Rotation mirror_reflect(const Rotation& r) {
  Mat3 r_pi = Mat3::Identity();
  r_pi(0, 0) = -1.0;
  r_pi(1, 1) = -1.0;
  return Rotation::from_matrix_unchecked(r_pi * r.matrix());
}

double geodesic_angle_deg(const Rotation& r1, const Rotation& r2) {
  const double tr = (r1.matrix().transpose() * r2.matrix()).trace();
  const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  return rad2deg(std::acos(c));
}

Rotation random_rotation(Rng& rng) {
  Eigen::Vector4d q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  while (q.norm() < 1e-6) q = Eigen::Vector4d(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return project_to_so3(m);
}

ProcrustesReport procrustes_align(const std::vector<RigidTransform>& pred,
                                  const std::vector<RigidTransform>& gt) {
  if (pred.size() != gt.size()) throw NumericError("procrustes_align: size mismatch");
  const int n = static_cast<int>(pred.size());
  if (n < 3) throw NumericError("procrustes_align: need at least 3 cameras");

  Eigen::Matrix3Xd p(3, n), g(3, n);
  for (int i = 0; i < n; ++i) {
    p.col(i) = pred[i].center();
    g.col(i) = gt[i].center();
  }
  const Vec3 mu_p = p.rowwise().mean();
  const Vec3 mu_g = g.rowwise().mean();
  p.colwise() -= mu_p;
  g.colwise() -= mu_g;

  const double var_p = p.squaredNorm() / n;
  const Mat3 cov = (g * p.transpose()) / n;
  Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  // Degenerate when centers are (near) collinear or coincident: the similarity
  // is not uniquely determined and reported errors would be meaningless.
  if (var_p < 1e-18 || sv(1) <= 1e-9 * std::max(sv(0), 1e-300)) {
    throw NumericError("procrustes_align: degenerate camera-center configuration, alignment unreliable");
  }
  Mat3 d = Mat3::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) d(2, 2) = -1.0;
  const Mat3 rot = svd.matrixU() * d * svd.matrixV().transpose();
  const double scale = (sv.asDiagonal().toDenseMatrix() * d).trace() / var_p;
  if (!(scale > 0)) throw NumericError("procrustes_align: non-positive scale, alignment unreliable");

  ProcrustesReport rep;
  rep.transform.scale = scale;
  rep.transform.rotation = Rotation::from_matrix_unchecked(rot);
  rep.transform.translation = mu_g - scale * (rot * mu_p);

  rep.rotation_errors_deg.resize(n);
  rep.center_errors.resize(n);
  for (int i = 0; i < n; ++i) {
    // world re-mapping y = sRx + T turns a world-to-camera rotation R_i into R_i R^T
    const Rotation aligned_rot =
        Rotation::from_matrix_unchecked(pred[i].rotation.matrix() * rot.transpose());
    rep.rotation_errors_deg[i] = geodesic_angle_deg(aligned_rot, gt[i].rotation);
    const Vec3 aligned_center = rep.transform.apply(pred[i].center());
    rep.center_errors[i] = (aligned_center - gt[i].center()).norm();
    rep.mean_rotation_error_deg += rep.rotation_errors_deg[i];
    rep.mean_center_error += rep.center_errors[i];
  }
  rep.mean_rotation_error_deg /= n;
  rep.mean_center_error /= n;
  return rep;
}

void save_poses(const std::string& path, const std::vector<PoseEntry>& poses) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : poses) {
    nlohmann::json r = nlohmann::json::array();
    const Mat3& m = e.pose.rotation.matrix();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.push_back(m(i, j));
    nlohmann::json t = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) t.push_back(e.pose.translation[i]);
    arr.push_back({{"image_id", e.image_id}, {"R", r}, {"t", t}});
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write pose file: " + path);
  out << arr.dump(2) << "\n";
}

std::vector<PoseEntry> load_poses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read pose file: " + path);
  nlohmann::json arr;
  try {
    in >> arr;
  } catch (const std::exception& e) {
    throw DataError("malformed pose file " + path + ": " + e.what());
  }
  std::vector<PoseEntry> out;
  for (const auto& item : arr) {
    PoseEntry e;
    e.image_id = item.at("image_id").get<int>();
    Mat3 m;
    const auto& r = item.at("R");
    if (r.size() != 9) throw DataError("pose file " + path + ": R must have 9 entries");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = r[3 * i + j].get<double>();
    e.pose.rotation = Rotation::from_matrix(m);
    const auto& t = item.at("t");
    for (int i = 0; i < 3; ++i) e.pose.translation[i] = t.at(i).get<double>();
    out.push_back(e);
  }
  return out;
}

}  // namespace lunerf
