#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "lunerf/rng.hpp"

namespace lunerf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

constexpr double kRotationTol = 1e-9;

inline double deg2rad(double d) { return d * M_PI / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / M_PI; }

// 3x3 rotation matrix, validated to be orthonormal with det +1.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  // Throws NumericError if m is not a rotation to within kRotationTol.
  static Rotation from_matrix(const Mat3& m);
  // No validation; for internal compositions of already-valid rotations.
  static Rotation from_matrix_unchecked(const Mat3& m) {
    Rotation r;
    r.m_ = m;
    return r;
  }
  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return from_matrix_unchecked(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return from_matrix_unchecked(m_ * o.m_); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  bool isApprox(const Rotation& o, double tol = 1e-12) const { return m_.isApprox(o.m_, tol); }

 private:
  Mat3 m_;
};

// World-to-camera rigid transform: x_cam = R * x_world + t.
struct RigidTransform {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  // Camera center in world coordinates: c = -R^T t.
  Vec3 center() const { return -(rotation.matrix().transpose() * translation); }
  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
};

struct SimilarityTransform {
  double scale = 1.0;  // > 0
  Rotation rotation;
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return scale * (rotation * x) + translation; }
};

struct CameraIntrinsics {
  double focal = 0.0;  // pixels
  Vec2 principal_point = Vec2::Zero();
  int width = 0;
  int height = 0;

  void validate() const;  // throws ConfigError on bad values
};

// a then b^-1 etc. follow the group laws; compose(a,b) = a∘b.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& p);

// Relative pose P_ij = P_j ∘ P_i^{-1}.
RigidTransform relative_pose(const RigidTransform& p_i, const RigidTransform& p_j);

Mat3 hat(const Vec3& w);

// Rodrigues exponential; log throws NumericError when the angle reaches pi
// (axis ambiguous there).
Rotation exp_so3(const Vec3& omega);
Vec3 log_so3(const Rotation& r);

// d(exp(omega))/d(omega_k) for k=0..2 (Gallego-Yezzi closed form).
std::array<Mat3, 3> exp_so3_jacobians(const Vec3& omega);

// Nearest rotation in Frobenius norm; SVD with determinant guard.
Rotation project_to_so3(const Mat3& m);

Rotation rot_x(double radians);
Rotation rot_y(double radians);
Rotation rot_z(double radians);

// Pre-multiplication by R_pi = diag(-1,-1,1), a half-turn about the camera
// optical axis applied in the world-to-camera frame.
Rotation mirror_reflect(const Rotation& r);

// Geodesic distance arccos((trace(r1^T r2) - 1)/2) in degrees, clamped.
double geodesic_angle_deg(const Rotation& r1, const Rotation& r2);

// Uniform random rotation (quaternion method).
Rotation random_rotation(Rng& rng);

struct ProcrustesReport {
  SimilarityTransform transform;  // maps predicted world to ground-truth world
  double mean_rotation_error_deg = 0.0;
  double mean_center_error = 0.0;  // ground-truth scene units
  std::vector<double> rotation_errors_deg;
  std::vector<double> center_errors;
};

// Similarity alignment of predicted to ground-truth camera centers
// (Umeyama closed form with reflection guard), then per-camera errors in the
// ground-truth frame. Throws NumericError for degenerate center
// configurations (fewer than 3 cameras, or collinear/coincident centers).
ProcrustesReport procrustes_align(const std::vector<RigidTransform>& pred,
                                  const std::vector<RigidTransform>& gt);

// Pose files: JSON array of {image_id, R: 9 floats row-major, t: 3 floats}.
struct PoseEntry {
  int image_id = 0;
  RigidTransform pose;
};
void save_poses(const std::string& path, const std::vector<PoseEntry>& poses);
std::vector<PoseEntry> load_poses(const std::string& path);

}  // namespace lunerf
