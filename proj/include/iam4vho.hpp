#pragma once

#include "iam4vho/core.hpp"
#include "iam4vho/radio_env.hpp"
#include "iam4vho/mih.hpp"
#include "iam4vho/decision.hpp"
#include "iam4vho/execution.hpp"
#include "iam4vho/scheduler.hpp"
#include "iam4vho/trace.hpp"
#include "iam4vho/metrics.hpp"
#include "iam4vho/scenario.hpp"
#include "iam4vho/engine.hpp"
#include "iam4vho/report.hpp"
