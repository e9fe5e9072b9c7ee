#ifndef VFOG_VFOG_HPP
#define VFOG_VFOG_HPP

#include "vfog/core/operator.hpp"
#include "vfog/core/residual.hpp"
#include "vfog/core/rng.hpp"
#include "vfog/core/sampling.hpp"
#include "vfog/core/types.hpp"

#include "vfog/estimators/estimator.hpp"
#include "vfog/estimators/schedules.hpp"

#include "vfog/solver/constants.hpp"
#include "vfog/solver/method.hpp"
#include "vfog/solver/run.hpp"
#include "vfog/solver/vfog.hpp"

#include "vfog/baselines/baselines.hpp"

#include "vfog/problems/linear.hpp"
#include "vfog/problems/matrix_game.hpp"
#include "vfog/problems/mdp.hpp"
#include "vfog/problems/norm.hpp"
#include "vfog/problems/projections.hpp"
#include "vfog/problems/resolvents.hpp"

#include "vfog/certify/certify.hpp"

#endif
