/** Walks a weighted grid along a fixed path and reports the collected weight. */
public class GridWalk {

    public static void main(String[] args) {
        int[][] grid = new int[6][6];
        int seed = 7;
        for (int r = 0; r < 6; r++) {
            for (int c = 0; c < 6; c++) {
                seed = (seed * 31 + 17) % 101;
                grid[r][c] = seed;
            }
        }
        System.out.println("collected=" + walk(grid, 6));
    }

    static int walk(int[][] grid, int size) {
        int row = 0;
        int col = 0;
        int collected = grid[0][0];
        while (row < size - 1 || col < size - 1) {
            if (row == size - 1) {
                col++;
            } else if (col == size - 1) {
                row++;
            } else if (grid[row + 1][col] >= grid[row][col + 1]) {
                row++;
            } else {
                col++;
            }
            collected += grid[row][col];
        }
        return collected;
    }
}
