#pragma once

#include "bibcorpus/analysis.hpp"
#include "bibcorpus/community.hpp"
#include "bibcorpus/corpus.hpp"
#include "bibcorpus/filter.hpp"
#include "bibcorpus/ingest.hpp"
#include "bibcorpus/pipeline.hpp"
#include "bibcorpus/queries.hpp"
#include "bibcorpus/record.hpp"
#include "bibcorpus/store.hpp"
#include "bibcorpus/text.hpp"
#include "bibcorpus/textkit.hpp"
#include "bibcorpus/trends.hpp"
#include "bibcorpus/venues.hpp"
