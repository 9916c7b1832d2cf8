//! Strongly connected components (iterative Tarjan).

/// Returns the SCCs of the graph given by `succ`, each as a sorted vector.
/// Components come out in reverse topological order.
pub fn tarjan_scc(n: usize, succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    #[derive(Clone)]
    struct Node {
        index: usize,
        lowlink: usize,
        on_stack: bool,
        visited: bool,
    }
    let mut nodes = vec![
        Node { index: 0, lowlink: 0, on_stack: false, visited: false };
        n
    ];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut sccs = Vec::new();

    // explicit DFS stack: (v, successor list, next child position)
    for root in 0..n {
        if nodes[root].visited {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        nodes[root].visited = true;
        nodes[root].index = next_index;
        nodes[root].lowlink = next_index;
        next_index += 1;
        nodes[root].on_stack = true;
        stack.push(root);

        while let Some(&mut (v, ref succs, ref mut child)) = call.last_mut() {
            if *child < succs.len() {
                let w = succs[*child];
                *child += 1;
                if !nodes[w].visited {
                    nodes[w].visited = true;
                    nodes[w].index = next_index;
                    nodes[w].lowlink = next_index;
                    next_index += 1;
                    nodes[w].on_stack = true;
                    stack.push(w);
                    call.push((w, succ(w), 0));
                } else if nodes[w].on_stack {
                    nodes[v].lowlink = nodes[v].lowlink.min(nodes[w].index);
                }
            } else {
                if nodes[v].lowlink == nodes[v].index {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        nodes[w].on_stack = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    sccs.push(comp);
                }
                call.pop();
                if let Some(&mut (p, _, _)) = call.last_mut() {
                    let low = nodes[v].lowlink;
                    nodes[p].lowlink = nodes[p].lowlink.min(low);
                }
            }
        }
    }
    sccs
}

/// SCCs with no edge leaving them (the recurrent classes of a chain whose
/// support graph this is). Sorted vectors, deterministic order.
pub fn bottom_sccs(n: usize, succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let sccs = tarjan_scc(n, succ);
    let mut comp_of = vec![usize::MAX; n];
    for (i, c) in sccs.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut out: Vec<Vec<usize>> = sccs
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            c.iter().all(|&v| succ(v).into_iter().all(|w| comp_of[w] == *i))
        })
        .map(|(_, c)| c.clone())
        .collect();
    out.sort();
    out
}

/// Nodes reachable from `start` (inclusive).
pub fn reachable(n: usize, start: &[usize], succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut todo: Vec<usize> = start.to_vec();
    for &s in start {
        seen[s] = true;
    }
    while let Some(v) = todo.pop() {
        for w in succ(v) {
            if !seen[w] {
                seen[w] = true;
                todo.push(w);
            }
        }
    }
    seen
}
