from pimlang.core.desugar import complete_model, desugar
from pimlang.core.sites import (
    check_state_cap,
    count_states,
    enumerate_states,
    sentence_states,
    site_key,
    site_table,
    sites_of,
    species_of,
    state_index,
    state_name,
    state_sort_key,
    states,
)
