#include <stdio.h>
#include <string.h>
#include "mincayley.h"

int main(void) {
    McGroup *g = NULL;
    McGraph *graph = NULL;
    size_t lo = 0, hi = 0, colors[21];

    if (mc_group_new("sdp:7,3,2", &g) != MC_STATUS_OK) return 1;
    if (mc_cayley_graph(g, "(1,0),(0,1)", &graph) != MC_STATUS_OK) return 2;
    mc_group_free(g);
    if (mc_chromatic_number(graph, 10.0, &lo, &hi, colors) != MC_STATUS_OK) return 3;
    printf("n=%zu m=%zu chi=%zu\n", mc_graph_vertex_count(graph), mc_graph_edge_count(graph), lo);
    mc_graph_free(graph);

    if (mc_group_new("nope:1", &g) != MC_STATUS_PARSE) return 4;
    printf("error=%s\n", mc_last_error_message());
    return 0;
}
