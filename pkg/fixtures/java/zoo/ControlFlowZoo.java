import java.util.ArrayList;
import java.util.List;

/**
 * Control-flow shapes that the analyzer has to model faithfully: every loop
 * style, labeled jumps, both switch dialects, and early returns.
 */
public class ControlFlowZoo {

    int sumPositive(int[] values) {
        int total = 0;
        for (int i = 0; i < values.length; i++) {
            if (values[i] > 0) {
                total += values[i];
            }
        }
        return total;
    }

    int firstIndexOf(int[] values, int needle) {
        int i = 0;
        while (i < values.length) {
            if (values[i] == needle) {
                return i;
            }
            i++;
        }
        return -1;
    }

    long pollUntilStable(long seed) {
        long current = seed;
        long previous;
        do {
            previous = current;
            current = (current * 6364136223846793005L + 1442695040888963407L) >>> 3;
        } while (current != previous && current != 0);
        return current;
    }

    String classify(int code) {
        switch (code) {
            case 200:
            case 201:
                return "ok";
            case 301:
            case 302:
                return "redirect";
            case 404:
                return "missing";
            default:
                return "other";
        }
    }

    int arrowSwitch(int kind) {
        int weight = 0;
        switch (kind) {
            case 1 -> weight = 10;
            case 2 -> weight = 20;
            default -> weight = -1;
        }
        return weight;
    }

    int fallthroughTally(int level) {
        int score = 0;
        switch (level) {
            case 3:
                score += 100;
            case 2:
                score += 10;
            case 1:
                score += 1;
                break;
            default:
                score = -1;
        }
        return score;
    }

    List<Integer> collectPairs(int[][] grid) {
        List<Integer> found = new ArrayList<>();
        outer:
        for (int row = 0; row < grid.length; row++) {
            for (int col = 0; col < grid[row].length; col++) {
                if (grid[row][col] < 0) {
                    continue outer;
                }
                if (found.size() > 16) {
                    break outer;
                }
                found.add(grid[row][col]);
            }
        }
        return found;
    }

    int labeledWhile(int bound) {
        int steps = 0;
        scan:
        while (steps < bound) {
            steps++;
            if (steps % 7 == 0) {
                break scan;
            }
        }
        return steps;
    }

    int earlyReturns(int a, int b) {
        if (a < 0) {
            return -a;
        }
        if (b < 0) {
            return -b;
        }
        int merged = a * 31 + b;
        return merged;
    }

    void drainQueue(List<String> queue) {
        while (!queue.isEmpty()) {
            String head = queue.remove(0);
            if (head.isEmpty()) {
                continue;
            }
            System.out.println(head);
        }
    }

    int nestedSwitchInLoop(int[] ops) {
        int acc = 0;
        for (int op : ops) {
            switch (op % 3) {
                case 0:
                    acc += 1;
                    break;
                case 1:
                    acc *= 2;
                    break;
                default:
                    acc -= 1;
            }
        }
        return acc;
    }

    int forWithMultiInit(int n) {
        int acc = 0;
        for (int i = 0, j = n; i < j; i++, j--) {
            acc += i * j;
        }
        return acc;
    }

    int infiniteForWithBreak(int limit) {
        int ticks = 0;
        for (;;) {
            ticks++;
            if (ticks >= limit) {
                break;
            }
        }
        return ticks;
    }
}
